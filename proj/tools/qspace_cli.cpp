#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qspace/algebra.hpp"
#include "qspace/calculus.hpp"
#include "qspace/errors.hpp"
#include "qspace/geodesic.hpp"
#include "qspace/json_io.hpp"
#include "qspace/qpoint.hpp"
#include "qspace/strata.hpp"
#include "qspace/tangent.hpp"
#include "qspace/verify.hpp"

namespace {

using qspace::Json;

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

qspace::QPoint load_qpoint(const std::string& path) {
    return qspace::qpoint_from_json(qspace::load_json_file(path));
}

// Piecewise-linear interpolant of a tracked selection; the evaluator handed
// to the quotient derivative for sampled inputs.
qspace::QFunction1D interpolant(const qspace::Selection& sel) {
    return [sel](double x) {
        const double lo = sel.domain_start();
        const double hi = sel.domain_end();
        const double clamped = std::min(std::max(x, lo), hi);
        const double u = (clamped - lo) / sel.step();
        std::size_t k = static_cast<std::size_t>(std::max(0.0, std::floor(u)));
        k = std::min(k, sel.sample_count() - 2);
        const double frac = u - static_cast<double>(k);
        std::vector<qspace::Vec> pts;
        pts.reserve(sel.branch_count());
        for (std::size_t j = 0; j < sel.branch_count(); ++j)
            pts.push_back(qspace::lerp(sel.value(j, k), sel.value(j, k + 1), frac));
        return qspace::QPoint(std::move(pts));
    };
}

std::uint64_t seed_or_env(std::uint64_t seed, bool seed_given) {
    if (seed_given) return seed;
    if (const char* env = std::getenv("QSPACE_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 42;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations in the metric space of Q-point multisets"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write the JSON result to this file");

    std::string file_a, file_b, suite;
    bool oracle = false;
    std::size_t samples = 11;
    double tol = std::numeric_limits<double>::quiet_NaN();
    double radius = 0.0, x0 = 0.0, order_k = 2.0;
    std::string order_text = "2";
    std::size_t q_value = 1, trials = 0;
    std::uint64_t seed = 0;

    CLI::App* cmd_distance = app.add_subcommand("distance", "G distance between two multisets");
    cmd_distance->add_option("a", file_a, "QPoint JSON file")->required();
    cmd_distance->add_option("b", file_b, "QPoint JSON file")->required();
    cmd_distance->add_flag("--oracle", oracle, "exhaustive permutation search");

    CLI::App* cmd_geodesic = app.add_subcommand("geodesic", "matched-linear geodesic samples");
    cmd_geodesic->add_option("a", file_a)->required();
    cmd_geodesic->add_option("b", file_b)->required();
    cmd_geodesic->add_option("--samples", samples, "number of samples on [0,1]");

    CLI::App* cmd_signature = app.add_subcommand("signature", "multiplicity profile of a multiset");
    cmd_signature->add_option("p", file_a)->required();
    cmd_signature->add_option("--tol", tol, "grouping tolerance (default exact)");

    CLI::App* cmd_decomp = app.add_subcommand("decompositions", "permissible decompositions of Q");
    cmd_decomp->add_option("Q", q_value)->required();

    CLI::App* cmd_tdist = app.add_subcommand("tangent-dist", "tangent-cone distance");
    cmd_tdist->add_option("u", file_a, "TangentVector JSON file")->required();
    cmd_tdist->add_option("v", file_b, "TangentVector JSON file")->required();

    CLI::App* cmd_exp = app.add_subcommand("exp", "exponential map of a tangent vector");
    cmd_exp->add_option("v", file_a, "TangentVector JSON file")->required();

    CLI::App* cmd_tensor = app.add_subcommand("tensor-sum", "pairwise branch sums of two curves");
    cmd_tensor->add_option("f", file_a, "BranchedCurve JSON file")->required();
    cmd_tensor->add_option("g", file_b, "BranchedCurve JSON file")->required();

    CLI::App* cmd_dirichlet = app.add_subcommand("dirichlet", "Dirichlet energy of a branched curve");
    cmd_dirichlet->add_option("f", file_a)->required();

    CLI::App* cmd_norm = app.add_subcommand("lp-norm", "L^k norm of a branched curve");
    cmd_norm->add_option("f", file_a)->required();
    cmd_norm->add_option("--k", order_text, "order (positive number or 'inf')");

    CLI::App* cmd_subtract = app.add_subcommand("subtract", "group-wise difference z(-)q");
    cmd_subtract->add_option("z", file_a)->required();
    cmd_subtract->add_option("q", file_b)->required();
    cmd_subtract->add_option("--r", radius, "neighborhood radius")->required();

    CLI::App* cmd_derivative = app.add_subcommand("derivative", "quotient derivative of a sampled curve");
    cmd_derivative->add_option("f", file_a, "SampledCurve JSON file")->required();
    cmd_derivative->add_option("--x0", x0)->required();
    cmd_derivative->add_option("--tol", tol, "quotient convergence tolerance");

    CLI::App* cmd_select = app.add_subcommand("select", "continuous branch decomposition");
    cmd_select->add_option("f", file_a, "SampledCurve JSON file")->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "run an invariant suite");
    cmd_verify->add_option("--suite", suite, "suite name")->required();
    CLI::Option* seed_opt = cmd_verify->add_option("--seed", seed, "RNG seed (env QSPACE_SEED as fallback)");
    cmd_verify->add_option("--trials", trials, "trial count (0 = suite default)");
    cmd_verify->add_option("--tol", tol, "tolerance override");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_distance)) {
            const qspace::QPoint a = load_qpoint(file_a);
            const qspace::QPoint b = load_qpoint(file_b);
            const qspace::DistanceResult d =
                oracle ? qspace::distance_bruteforce(a, b) : qspace::distance(a, b);
            qspace::write_json(qspace::to_json(d), out_path);
        } else if (app.got_subcommand(cmd_geodesic)) {
            if (samples < 2) throw qspace::error("need at least two samples");
            const qspace::Geodesic gam =
                qspace::geodesic(load_qpoint(file_a), load_qpoint(file_b));
            Json j;
            j["length"] = gam.length();
            Json list = Json::array();
            std::vector<qspace::QPoint> pts;
            for (std::size_t k = 0; k < samples; ++k) {
                const double t = static_cast<double>(k) / static_cast<double>(samples - 1);
                pts.push_back(gam.eval(t));
                Json item;
                item["t"] = t;
                item["point"] = qspace::to_json(pts.back());
                list.push_back(std::move(item));
            }
            double speed_err = 0.0;
            for (std::size_t k = 0; k + 1 < samples; ++k) {
                const double dt = 1.0 / static_cast<double>(samples - 1);
                speed_err = std::max(speed_err,
                                     std::abs(qspace::distance(pts[k], pts[k + 1]).g -
                                              dt * gam.length()));
            }
            j["samples"] = std::move(list);
            j["max_speed_error"] = speed_err;
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_signature)) {
            const double grouping = std::isnan(tol) ? 0.0 : tol;
            qspace::write_json(
                qspace::to_json(qspace::signature(load_qpoint(file_a), grouping)),
                out_path);
        } else if (app.got_subcommand(cmd_decomp)) {
            const auto decs = qspace::enumerate_decompositions(q_value);
            Json j;
            j["Q"] = q_value;
            j["count"] = decs.size();
            Json list = Json::array();
            for (const auto& d : decs) {
                Json item;
                item["J"] = d.J;
                item["k"] = d.multiplicities;
                list.push_back(std::move(item));
            }
            j["decompositions"] = std::move(list);
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_tdist)) {
            const qspace::TangentVector u =
                qspace::tangent_from_json(qspace::load_json_file(file_a));
            const qspace::TangentVector v =
                qspace::tangent_from_json(qspace::load_json_file(file_b));
            Json j;
            j["d"] = qspace::tangent_distance(u, v);
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_exp)) {
            const qspace::TangentVector v =
                qspace::tangent_from_json(qspace::load_json_file(file_a));
            qspace::write_json(qspace::to_json(qspace::exp_map(v.base(), v)), out_path);
        } else if (app.got_subcommand(cmd_tensor)) {
            const qspace::BranchedCurve f =
                qspace::curve_from_json(qspace::load_json_file(file_a));
            const qspace::BranchedCurve g =
                qspace::curve_from_json(qspace::load_json_file(file_b));
            qspace::write_json(qspace::to_json(qspace::tensor_sum(f, g)), out_path);
        } else if (app.got_subcommand(cmd_dirichlet)) {
            Json j;
            j["dir"] = qspace::dirichlet(
                qspace::curve_from_json(qspace::load_json_file(file_a)));
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_norm)) {
            if (order_text == "inf" || order_text == "Inf" || order_text == "INF")
                order_k = std::numeric_limits<double>::infinity();
            else
                order_k = std::stod(order_text);
            const qspace::NormReport r = qspace::lp_norm(
                qspace::curve_from_json(qspace::load_json_file(file_a)), order_k);
            Json j;
            if (std::isinf(r.k))
                j["k"] = "inf";
            else
                j["k"] = r.k;
            j["value"] = r.value;
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_subtract)) {
            qspace::write_json(
                qspace::to_json(qspace::subtract(load_qpoint(file_a),
                                                 load_qpoint(file_b), radius)),
                out_path);
        } else if (app.got_subcommand(cmd_derivative)) {
            const qspace::SampledCurve c =
                qspace::sampled_curve_from_json(qspace::load_json_file(file_a));
            if (!(x0 > c.a && x0 < c.b))
                throw qspace::precondition_error("x0 must be interior to the domain");
            const qspace::Selection sel = qspace::continuous_selection(c);
            qspace::QuotientSchedule sched;
            sched.h0 = 0.5 * std::min(x0 - c.a, c.b - x0);
            if (!std::isnan(tol)) sched.converge_tol = tol;
            const qspace::DerivativeValue d =
                qspace::derivative(interpolant(sel), x0, sched);
            Json j;
            j["value"] = qspace::to_json(d.value);
            j["grouped"] = d.grouped;
            j["df_squared"] = d.df_squared;
            j["h_used"] = d.h_used;
            j["certificate"] = d.certificate;
            qspace::write_json(j, out_path);
        } else if (app.got_subcommand(cmd_select)) {
            const qspace::SampledCurve c =
                qspace::sampled_curve_from_json(qspace::load_json_file(file_a));
            qspace::write_json(qspace::to_json(qspace::continuous_selection(c)),
                               out_path);
        } else if (app.got_subcommand(cmd_verify)) {
            const std::uint64_t s = seed_or_env(seed, seed_opt->count() > 0);
            const auto t_start = std::chrono::steady_clock::now();
            const qspace::SuiteReport rep = qspace::run_suite(suite, s, trials, tol);
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t_start)
                    .count();
            Json j;
            j["suite"] = rep.suite;
            j["seed"] = rep.seed;
            j["trials"] = rep.trials;
            Json checks = Json::array();
            for (const auto& c : rep.checks) {
                Json item;
                item["name"] = c.name;
                item["kind"] = c.kind;
                item["pass"] = c.pass;
                item["worst"] = c.worst;
                item["trials"] = c.trials;
                checks.push_back(std::move(item));
            }
            j["checks"] = std::move(checks);
            j["pass"] = rep.pass;
            qspace::write_json(j, out_path);
            // Runtime stays out of the report so a fixed seed gives
            // byte-identical output.
            std::cerr << "suite " << rep.suite << " finished in " << elapsed
                      << " s\n";
            return rep.pass ? kExitOk : kExitInvariantFailure;
        }
        return kExitOk;
    } catch (const Json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qspace::error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

#include "qspace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qspace/algebra.hpp"
#include "qspace/calculus.hpp"
#include "qspace/errors.hpp"
#include "qspace/geodesic.hpp"
#include "qspace/qpoint.hpp"
#include "qspace/random.hpp"
#include "qspace/strata.hpp"
#include "qspace/tangent.hpp"

namespace qspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pick(double override_tol, double fallback) {
    return std::isnan(override_tol) ? fallback : override_tol;
}

// Inequality check: worst = minimum slack, passing while worst >= -tol.
struct MinSlack {
    double worst = kInf;
    void feed(double s) { worst = std::min(worst, s); }
    CheckResult result(const std::string& name, double tol,
                       std::size_t trials) const {
        return {name, "min-slack", worst >= -tol, worst, trials};
    }
};

// Equality check: worst = maximum absolute error, passing while worst <= tol.
struct MaxError {
    double worst = 0.0;
    void feed(double e) { worst = std::max(worst, std::abs(e)); }
    CheckResult result(const std::string& name, double tol,
                       std::size_t trials) const {
        return {name, "max-error", worst <= tol, worst, trials};
    }
};

double pairing_cost(const QPoint& a, const QPoint& b,
                    const std::vector<std::size_t>& sigma) {
    KahanSum s;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        s.add(squared_distance(a.point(i), b.point(sigma[i])));
    return s.value();
}

// Multiset with duplicate structure: a random permissible decomposition with
// well-separated supports.
QPoint random_structured(Rng& rng, std::size_t q, std::size_t n,
                         double sep = 0.4) {
    const auto decs = enumerate_decompositions(q);
    const auto& dec = decs[rng.index(decs.size())];
    // A partial draw can block all remaining space (tight for n = 1), so
    // restart the whole set after repeated rejections.
    const double sep_eff = std::min(sep, 1.0 / static_cast<double>(dec.J));
    std::vector<Vec> supports;
    std::size_t failures = 0;
    while (supports.size() < dec.J) {
        Vec c = rng.vec(n, -1.0, 1.0);
        bool ok = true;
        for (const Vec& s : supports)
            ok = ok && euclidean_distance(c, s) >= sep_eff;
        if (ok) {
            supports.push_back(std::move(c));
            failures = 0;
        } else if (++failures > 20) {
            supports.clear();
            failures = 0;
        }
    }
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < dec.J; ++i)
        for (std::size_t c = 0; c < dec.multiplicities[i]; ++c)
            pts.push_back(supports[i]);
    return QPoint(std::move(pts));
}

TangentVector random_tangent(Rng& rng, const QPoint& base, double target_norm) {
    const Signature sig = signature(base, 0.0);
    std::vector<std::vector<Vec>> blocks(sig.J);
    for (std::size_t i = 0; i < sig.J; ++i)
        for (std::size_t c = 0; c < sig.group_sizes[i]; ++c)
            blocks[i].push_back(rng.vec(base.dimension(), -1.0, 1.0));
    TangentVector v(base, std::move(blocks));
    return v.scaled(target_norm / std::max(v.norm(), 1e-12));
}

// Euler's pentagonal-number recurrence; independent of the enumeration path.
std::vector<long long> partition_numbers(std::size_t max_n) {
    std::vector<long long> p(max_n + 1, 0);
    p[0] = 1;
    for (std::size_t n = 1; n <= max_n; ++n) {
        long long s = 0;
        for (long long k = 1;; ++k) {
            const long long g1 = k * (3 * k - 1) / 2;
            const long long g2 = k * (3 * k + 1) / 2;
            if (g1 > static_cast<long long>(n)) break;
            const long long sign = (k % 2 == 1) ? 1 : -1;
            s += sign * p[n - static_cast<std::size_t>(g1)];
            if (g2 <= static_cast<long long>(n))
                s += sign * p[n - static_cast<std::size_t>(g2)];
        }
        p[n] = s;
    }
    return p;
}

SuiteReport finish(SuiteReport report) {
    report.pass = true;
    for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

SuiteReport run_pc(std::uint64_t seed, std::size_t trials, double tol) {
    SuiteReport report{"pc", seed, trials, {}, false};
    const double slack_tol = pick(tol, 1e-9);
    Rng rng(seed);
    MinSlack slack;
    MaxError xcheck;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        const QPoint a = random_qpoint(rng, q, n);
        const QPoint b = random_qpoint(rng, q, n);
        const QPoint c = random_qpoint(rng, q, n);
        const double t = rng.uniform();
        const Geodesic gam = geodesic(a, b);
        slack.feed(pc_comparison(gam, c, t).slack);
        const QPoint p = gam.eval(t);
        const QPoint* pairs[4][2] = {{&a, &b}, {&a, &c}, {&b, &c}, {&p, &c}};
        for (auto& pr : pairs) {
            const double hung = distance(*pr[0], *pr[1]).g_squared;
            const double brute = distance_bruteforce(*pr[0], *pr[1]).g_squared;
            xcheck.feed((hung - brute) / std::max(1.0, brute));
        }
    }
    const std::size_t oracle_trials = std::min<std::size_t>(trials, 1000);
    MinSlack oracle_slack;
    for (std::size_t trial = 0; trial < oracle_trials; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        oracle_slack.feed(pc_comparison_all_optimal(random_qpoint(rng, q, n),
                                                    random_qpoint(rng, q, n),
                                                    random_qpoint(rng, q, n),
                                                    rng.uniform())
                              .slack);
    }
    report.checks.push_back(slack.result("comparison-slack", slack_tol, trials));
    report.checks.push_back(
        xcheck.result("hungarian-vs-bruteforce", pick(tol, 1e-12), 4 * trials));
    report.checks.push_back(oracle_slack.result("comparison-slack-all-optimal",
                                                slack_tol, oracle_trials));
    return finish(std::move(report));
}

SuiteReport run_flat1d(std::uint64_t seed, std::size_t trials, double tol) {
    SuiteReport report{"flat1d", seed, trials, {}, false};
    const double slack_tol = pick(tol, 1e-9);
    Rng rng(seed);
    MaxError slack, sorted_gap, persistence;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const QPoint a = random_qpoint(rng, q, 1);
        const QPoint b = random_qpoint(rng, q, 1);
        const QPoint c = random_qpoint(rng, q, 1);
        slack.feed(flatness_check_1d(a, b, c, rng.uniform()).slack);

        const double srt = sorted_matching_distance_1d(a, b).g_squared;
        const double brute = distance_bruteforce(a, b).g_squared;
        sorted_gap.feed((srt - brute) / std::max(1.0, brute));

        // Matching persistence: an optimal pairing of (a, c) stays optimal
        // against b when a and b are both sorted.
        const Matching wac = distance_bruteforce(a, c).witness;
        const double through = pairing_cost(b, c, wac.sigma);
        const double direct = distance_bruteforce(b, c).g_squared;
        persistence.feed((through - direct) / std::max(1.0, direct));
    }
    report.checks.push_back(slack.result("flatness-slack", slack_tol, trials));
    report.checks.push_back(
        sorted_gap.result("sorted-vs-bruteforce", pick(tol, 1e-12), trials));
    report.checks.push_back(
        persistence.result("matching-persistence", pick(tol, 1e-12), trials));
    return finish(std::move(report));
}

BranchedCurve random_polyline(Rng& rng, std::size_t branches, std::size_t n,
                              std::size_t samples) {
    std::vector<std::vector<Vec>> data(branches);
    for (auto& br : data) {
        br.reserve(samples);
        for (std::size_t k = 0; k < samples; ++k)
            br.push_back(rng.vec(n, -1.0, 1.0));
    }
    return BranchedCurve(0.0, 1.0, std::move(data));
}

SuiteReport run_minkowski(std::uint64_t seed, std::size_t pairs, double tol) {
    SuiteReport report{"minkowski", seed, pairs, {}, false};
    Rng rng(seed);
    MinSlack triangle, minkowski;
    MaxError dir_identity, eta_additive;
    const double orders[5] = {0.5, 1.0, 2.0, 3.0, kInf};
    std::size_t triangle_samples = 0;
    for (std::size_t trial = 0; trial < pairs; ++trial) {
        const std::size_t n = 1 + rng.index(2);
        const std::size_t p = 1 + rng.index(3);
        const std::size_t q = 1 + rng.index(3);
        const BranchedCurve f = random_polyline(rng, p, n, 101);
        const BranchedCurve g = random_polyline(rng, q, n, 101);

        for (std::size_t k = 0; k < f.sample_count(); ++k, ++triangle_samples)
            triangle.feed(weighted_triangle_check(f, g, k).slack);
        for (double k : orders)
            minkowski.feed(weighted_minkowski_check(f, g, k).slack);

        const BranchedCurve fg = tensor_sum(f, g);
        const double lhs = dirichlet(fg);
        const double rhs = static_cast<double>(q) * dirichlet(f) +
                           static_cast<double>(p) * dirichlet(g) +
                           2.0 * static_cast<double>(p * q) * pairing_integral(f, g);
        dir_identity.feed((lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));

        const std::vector<Vec> ef = eta_curve(f);
        const std::vector<Vec> eg = eta_curve(g);
        const std::vector<Vec> efg = eta_curve(fg);
        for (std::size_t k = 0; k < efg.size(); ++k)
            eta_additive.feed(euclidean_distance(efg[k], add(ef[k], eg[k])));
    }
    report.checks.push_back(triangle.result("weighted-triangle-slack",
                                            pick(tol, 1e-12), triangle_samples));
    report.checks.push_back(
        minkowski.result("weighted-minkowski-slack", pick(tol, 1e-9), 5 * pairs));
    report.checks.push_back(
        dir_identity.result("tensor-dirichlet-identity", pick(tol, 1e-12), pairs));
    report.checks.push_back(
        eta_additive.result("eta-additivity", pick(tol, 1e-13), pairs));
    return finish(std::move(report));
}

SuiteReport run_tangent(std::uint64_t seed, std::size_t trials, double tol) {
    SuiteReport report{"tangent", seed, trials, {}, false};
    Rng rng(seed);
    MaxError limit_gap, isometry_gap, scaling_mismatch;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const std::size_t n = 1 + rng.index(3);
        const QPoint base = random_structured(rng, q, n);
        const double eps = exp_isometry_radius(base);
        const double cap = std::isinf(eps) ? 1.0 : eps;
        const TangentVector u = random_tangent(rng, base, rng.uniform(0.1, 0.9) * cap);
        const TangentVector v = random_tangent(rng, base, rng.uniform(0.1, 0.9) * cap);

        const double d = tangent_distance(u, v);
        const double lim = tangent_distance_limit(u, v, {1e-6});
        limit_gap.feed((lim - d) / std::max(d, 1e-12));

        const double ge = distance(exp_map(base, u), exp_map(base, v)).g;
        isometry_gap.feed((ge - d) / std::max(1.0, d));

        for (double lambda : {0.5, 0.25, 0.125})
            for (double tau : {0.5, 0.25})
                scaling_mismatch.feed(
                    exp_map(base, u.scaled(lambda).scaled(tau)) ==
                            exp_map(base, u.scaled(lambda * tau))
                        ? 0.0
                        : 1.0);
    }
    report.checks.push_back(
        limit_gap.result("block-formula-vs-limit", pick(tol, 1e-6), trials));
    report.checks.push_back(
        isometry_gap.result("exp-local-isometry", pick(tol, 1e-12), trials));
    report.checks.push_back(
        scaling_mismatch.result("geodesic-scaling-exact", 0.5, 6 * trials));
    return finish(std::move(report));
}

// Known branches plus grid-aligned crossings; every sample is reproducible
// analytically at both the base grid and its refinement.
std::vector<std::function<Vec(double)>> selection_corpus_branches(Rng& rng,
                                                                  std::size_t q) {
    std::vector<std::function<Vec(double)>> branches;
    double home = 0.0;
    std::size_t left = q;
    while (left > 0) {
        if (left >= 2 && rng.uniform() < 0.5) {
            // Transversal crossing pair meeting exactly at a dyadic grid node.
            const double xc = static_cast<double>(64 + rng.index(129)) / 256.0;
            const double c = home + rng.uniform(-0.2, 0.2);
            const double s1 = rng.uniform(0.5, 2.0);
            const double s2 = rng.uniform(0.5, 2.0);
            branches.push_back([=](double x) { return Vec{c + s1 * (x - xc)}; });
            branches.push_back([=](double x) { return Vec{c - s2 * (x - xc)}; });
            left -= 2;
        } else {
            const double off = home + rng.uniform(-0.2, 0.2);
            const double amp = rng.uniform(0.05, 0.2);
            const double omega = rng.uniform(1.0, 6.0);
            const double phase = rng.uniform(0.0, 6.28);
            branches.push_back(
                [=](double x) { return Vec{off + amp * std::sin(omega * x + phase)}; });
            left -= 1;
        }
        home += 6.0;
    }
    return branches;
}

SampledCurve sample_multiset_curve(
    const std::vector<std::function<Vec(double)>>& branches, double a, double b,
    std::size_t samples) {
    std::vector<QPoint> data;
    data.reserve(samples);
    const double h = (b - a) / static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = a + static_cast<double>(k) * h;
        std::vector<Vec> pts;
        pts.reserve(branches.size());
        for (const auto& br : branches) pts.push_back(br(x));
        data.emplace_back(std::move(pts));
    }
    return SampledCurve(a, b, std::move(data));
}

double max_branch_jump(const Selection& sel) {
    double worst = 0.0;
    for (std::size_t j = 0; j < sel.branch_count(); ++j)
        for (std::size_t k = 0; k + 1 < sel.sample_count(); ++k)
            worst = std::max(worst,
                             euclidean_distance(sel.value(j, k + 1), sel.value(j, k)));
    return worst;
}

SuiteReport run_selection(std::uint64_t seed, std::size_t corpus, double tol) {
    SuiteReport report{"selection", seed, corpus, {}, false};
    Rng rng(seed);
    MaxError multiset_gap, jump_excess, refinement_excess;
    for (std::size_t trial = 0; trial < corpus; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const auto branches = selection_corpus_branches(rng, q);
        const SampledCurve f = sample_multiset_curve(branches, 0.0, 1.0, 257);
        const Selection sel = continuous_selection(f);

        for (std::size_t k = 0; k < f.samples.size(); ++k) {
            multiset_gap.feed(sel.value_at(k) == f.samples[k] ? 0.0 : 1.0);
            if (k + 1 == f.samples.size()) break;
            const double step_g = distance(f.samples[k], f.samples[k + 1]).g;
            for (std::size_t j = 0; j < q; ++j) {
                const double jump =
                    euclidean_distance(sel.value(j, k + 1), sel.value(j, k));
                jump_excess.feed(std::max(0.0, jump - step_g * (1.0 + 1e-12)));
            }
        }

        const SampledCurve f2 = sample_multiset_curve(branches, 0.0, 1.0, 513);
        const Selection sel2 = continuous_selection(f2);
        refinement_excess.feed(
            std::max(0.0, max_branch_jump(sel2) -
                              max_branch_jump(sel) * (1.0 + 1e-12) - 1e-15));
    }
    report.checks.push_back(
        multiset_gap.result("multiset-reproduction", 0.5, corpus));
    report.checks.push_back(
        jump_excess.result("branch-jump-bound", pick(tol, 1e-12), corpus));
    report.checks.push_back(
        refinement_excess.result("refinement-stability", pick(tol, 1e-12), corpus));
    return finish(std::move(report));
}

SuiteReport run_strata(std::uint64_t seed, std::size_t trials, double tol) {
    SuiteReport report{"strata", seed, trials, {}, false};
    Rng rng(seed);

    MaxError partition_gap;
    const auto p_table = partition_numbers(20);
    for (std::size_t q = 1; q <= 20; ++q)
        partition_gap.feed(static_cast<double>(enumerate_decompositions(q).size()) -
                           static_cast<double>(p_table[q]));
    report.checks.push_back(partition_gap.result("partition-counts", 0.5, 20));

    MaxError invariance;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const std::size_t n = 1 + rng.index(3);
        const QPoint a = random_structured(rng, q, n);
        const Signature sig = signature(a, 0.0);
        const double delta = stratum_radius(a);
        const double bound =
            (std::isinf(delta) ? 1.0 : delta) /
            std::pow(4.0, static_cast<double>(q));
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < sig.J; ++i) {
            Vec noise = rng.vec(n, -1.0, 1.0);
            noise = scale(noise, rng.uniform(0.0, 0.9) * bound /
                                     std::max(norm(noise), 1e-12));
            const Vec moved = add(sig.support[i], noise);
            for (std::size_t c = 0; c < sig.group_sizes[i]; ++c) pts.push_back(moved);
        }
        const QPoint b{pts};
        try {
            invariance.feed(stratum_local_geodesic_check(a, b).stays ? 0.0 : 1.0);
        } catch (const error&) {
            invariance.feed(1.0);
        }
    }
    report.checks.push_back(invariance.result("stratum-invariance", 0.5, trials));

    MaxError lex_ratio;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const QPoint a({{1.0, 1.0}, {1.0 + eps, 2.0}});
        const QPoint b({{1.0 + eps, 1.0}, {1.0, 2.0}});
        const double g = distance(a, b).g;
        const double psi_gap =
            euclidean_distance(lex_embedding(a), lex_embedding(b));
        lex_ratio.feed((psi_gap / g - 1.0 / eps) * eps);  // relative to 1/eps
    }
    report.checks.push_back(
        lex_ratio.result("lex-embedding-ratio", pick(tol, 1e-12), 3));

    MaxError semicontinuity;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const std::size_t n = 1 + rng.index(3);
        const QPoint p = random_structured(rng, q, n);
        const double delta = std::min(stratum_radius(p), 0.5);
        std::vector<Vec> pts;
        const double budget = 0.9 * delta / std::sqrt(static_cast<double>(q));
        for (std::size_t i = 0; i < q; ++i) {
            Vec noise = rng.vec(n, -1.0, 1.0);
            noise = scale(noise, rng.uniform(0.0, budget) /
                                     std::max(norm(noise), 1e-12));
            pts.push_back(add(p.point(i), noise));
        }
        const QPoint moved{pts};
        semicontinuity.feed(signature(moved, 0.0).J >= signature(p, 0.0).J ? 0.0
                                                                           : 1.0);
    }
    report.checks.push_back(
        semicontinuity.result("support-count-semicontinuity", 0.5, trials));

    MaxError openness;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const std::size_t n = 1 + rng.index(3);
        const QPoint p = random_qpoint(rng, q, n);
        const double delta = stratum_radius(p);
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < q; ++i) {
            Vec noise = rng.vec(n, -1.0, 1.0);
            noise = scale(noise, rng.uniform(0.0, 0.99) * 0.5 * delta /
                                     std::max(norm(noise), 1e-12));
            pts.push_back(add(p.point(i), noise));
        }
        const QPoint moved{pts};
        openness.feed(signature(moved, 0.0).J == q ? 0.0 : 1.0);
    }
    report.checks.push_back(openness.result("top-stratum-openness", 0.5, trials));

    return finish(std::move(report));
}

SuiteReport run_paper_examples(double tol) {
    SuiteReport report{"paper-examples", 0, 0, {}, false};
    const double eq_tol = pick(tol, 1e-12);

    const QPoint A({{0.0, 1.0}, {0.0, 0.0}});
    const QPoint B({{0.0, 0.0}, {1.0, -0.5}});
    const QPoint C({{0.0, 0.0}, {-1.0, -1.0}});

    {
        MaxError e;
        e.feed(distance(A, B).g_squared - 2.25);
        e.feed(distance(A, C).g_squared - 3.0);
        e.feed(distance(B, C).g_squared - 3.25);
        report.checks.push_back(e.result("worked-example-distances", eq_tol, 3));
    }
    {
        MaxError e;
        const Geodesic gam = geodesic(A, B);
        for (int k = 0; k <= 100; ++k) {
            const double t = static_cast<double>(k) / 100.0;
            const QPoint expected({{0.0, 1.0 - t}, {t, -t / 2.0}});
            e.feed(distance(gam.eval(t), expected).g);
        }
        report.checks.push_back(e.result("worked-example-geodesic", eq_tol, 101));
    }
    {
        MaxError e;
        const Geodesic gam = geodesic(A, B);
        for (int k = 0; k <= 100; ++k) {
            const double t = static_cast<double>(k) / 100.0;
            const double poly1 = 9.0 * t * t / 4.0 - t + 3.0;
            const double poly2 = 9.0 * t * t / 4.0 - 4.0 * t + 5.0;
            e.feed(distance(gam.eval(t), C).g_squared - std::min(poly1, poly2));
        }
        const double tc = 2.0 / 3.0;
        e.feed((9.0 * tc * tc / 4.0 - tc + 3.0) -
               (9.0 * tc * tc / 4.0 - 4.0 * tc + 5.0));
        report.checks.push_back(
            e.result("worked-example-comparison-curve", eq_tol, 102));
    }
    {
        MaxError e;
        e.feed(pc_comparison(A, B, C, 1.0 / 3.0).slack - 1.0 / 3.0);
        e.feed(pc_comparison(A, B, C, 0.0).slack);
        report.checks.push_back(e.result("worked-example-strict-slack", eq_tol, 2));
    }
    {
        // Two distinct geodesics between one pair of points.
        const QPoint a2({{0.0, 1.0}, {0.0, -1.0}});
        const QPoint b2({{-1.0, 0.0}, {1.0, 0.0}});
        MaxError e;
        const Geodesic got = geodesic(a2, b2);
        e.feed(got.length() - 2.0);
        const Geodesic g1(a2, b2, Matching{{0, 1}, pairing_cost(a2, b2, {0, 1})});
        const Geodesic g2(a2, b2, Matching{{1, 0}, pairing_cost(a2, b2, {1, 0})});
        e.feed(g1.length() - 2.0);
        e.feed(g2.length() - 2.0);
        double nearest = kInf;
        for (const Geodesic* g : {&g1, &g2})
            nearest = std::min(nearest, distance(got.eval(0.3), g->eval(0.3)).g);
        e.feed(nearest);
        report.checks.push_back(e.result("two-geodesics", eq_tol, 4));
    }
    {
        MaxError e;
        const QPoint x({{1.0}, {2.0}, {2.0}});
        const Signature s = signature(x, 0.0);
        e.feed(s.J == 2 && s.multiplicities == std::vector<std::size_t>{1, 2}
                   ? 0.0
                   : 1.0);
        report.checks.push_back(e.result("signature-example", 0.5, 1));
    }
    {
        // Same stratum, far apart: the hypothesis fails and the connecting
        // geodesic really does leave the stratum.
        const QPoint a3({{1.0}, {2.0}, {2.0}});
        const QPoint b3({{2.0}, {1.0}, {1.0}});
        MaxError e;
        bool hypothesis_rejected = false;
        try {
            stratum_local_geodesic_check(a3, b3);
        } catch (const precondition_error&) {
            hypothesis_rejected = true;
        }
        e.feed(hypothesis_rejected ? 0.0 : 1.0);
        e.feed(signature(geodesic(a3, b3).eval(0.5), 0.0).J == 3 ? 0.0 : 1.0);
        report.checks.push_back(e.result("stratum-counterexample", 0.5, 2));
    }
    {
        MaxError e;
        const double eps = 0.1;
        const QPoint ae({{1.0, 1.0}, {1.0 + eps, 2.0}});
        const QPoint be({{1.0 + eps, 1.0}, {1.0, 2.0}});
        e.feed(distance(ae, be).g - std::sqrt(2.0) * eps);
        e.feed(euclidean_distance(lex_embedding(ae), lex_embedding(be)) -
               std::sqrt(2.0));
        report.checks.push_back(e.result("lex-embedding-example", eq_tol, 2));
    }

    // Tensor-sum pair f = [[x]] + [[-1]], g = [[1-x]] + [[-1]] on [0, 1].
    const BranchedCurve f = BranchedCurve::sample(
        0.0, 1.0, 101,
        {[](double x) { return Vec{x}; }, [](double) { return Vec{-1.0}; }});
    const BranchedCurve g = BranchedCurve::sample(
        0.0, 1.0, 101,
        {[](double x) { return Vec{1.0 - x}; }, [](double) { return Vec{-1.0}; }});
    const BranchedCurve fg = tensor_sum(f, g);
    {
        MaxError e;
        for (std::size_t k = 0; k < fg.sample_count(); ++k) {
            const double x = fg.x(k);
            const QPoint expected({{1.0}, {x - 1.0}, {-x}, {-2.0}});
            e.feed(distance(fg.value_at(k), expected).g);
        }
        // Branches x-1 and -x meet at 1/2: their difference changes sign.
        const double d0 = fg.value(1, 0)[0] - fg.value(2, 0)[0];
        const double d1 = fg.value(1, 100)[0] - fg.value(2, 100)[0];
        const double dm = fg.value(1, 50)[0] - fg.value(2, 50)[0];
        e.feed(d0 < 0.0 && d1 > 0.0 ? 0.0 : 1.0);
        e.feed(dm);
        report.checks.push_back(e.result("tensor-sum-example", eq_tol, 103));
    }
    {
        MaxError e;
        const std::vector<Vec> ef = eta_curve(f);
        const std::vector<Vec> eg = eta_curve(g);
        const std::vector<Vec> efg = eta_curve(fg);
        for (std::size_t k = 0; k < efg.size(); ++k)
            e.feed(euclidean_distance(efg[k], add(ef[k], eg[k])));
        report.checks.push_back(e.result("eta-additivity-example", pick(tol, 1e-13),
                                         efg.size()));
    }
    {
        MaxError e;
        const double lhs = dirichlet(fg);
        const double rhs = 2.0 * dirichlet(f) + 2.0 * dirichlet(g) +
                           8.0 * pairing_integral(f, g);
        e.feed((lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        report.checks.push_back(e.result("tensor-dirichlet-example", eq_tol, 1));
    }
    {
        // Matched-linear interpolation between the worked pair spends exactly
        // its squared distance as Dirichlet energy.
        MaxError e;
        const Geodesic gam = geodesic(A, B);
        std::vector<QPoint> samples;
        for (int k = 0; k <= 100; ++k)
            samples.push_back(gam.eval(static_cast<double>(k) / 100.0));
        const Selection sel =
            continuous_selection(SampledCurve(0.0, 1.0, std::move(samples)));
        e.feed(dirichlet(sel) - 2.25);
        report.checks.push_back(e.result("geodesic-dirichlet-energy", eq_tol, 1));
    }
    {
        MinSlack s;
        for (std::size_t k = 0; k < f.sample_count(); ++k)
            s.feed(weighted_triangle_check(f, g, k).slack);
        report.checks.push_back(
            s.result("weighted-triangle-example", eq_tol, f.sample_count()));
    }
    {
        MinSlack s;
        for (double k : {0.5, 1.0, 2.0, 3.0, kInf})
            s.feed(weighted_minkowski_check(f, g, k).slack);
        report.checks.push_back(
            s.result("weighted-minkowski-example", pick(tol, 1e-9), 5));
    }
    {
        // The symmetric crossing has a continuous decomposition.
        MaxError e;
        std::vector<QPoint> samples;
        for (int k = 0; k <= 200; ++k) {
            const double x = -1.0 + static_cast<double>(k) / 100.0;
            samples.push_back(QPoint({{x}, {-x}}));
        }
        const SampledCurve crossing(-1.0, 1.0, samples);
        const Selection sel = continuous_selection(crossing);
        for (std::size_t k = 0; k < crossing.samples.size(); ++k) {
            e.feed(sel.value_at(k) == crossing.samples[k] ? 0.0 : 1.0);
            if (k + 1 < crossing.samples.size()) {
                const double step_g =
                    distance(crossing.samples[k], crossing.samples[k + 1]).g;
                for (std::size_t j = 0; j < 2; ++j) {
                    const double jump =
                        euclidean_distance(sel.value(j, k + 1), sel.value(j, k));
                    e.feed(jump <= step_g * (1.0 + 1e-12) ? 0.0 : 1.0);
                }
            }
        }
        report.checks.push_back(e.result("crossing-selection-example", 0.5, 201));
    }
    {
        MaxError e;
        const QPoint base({{0.0, 0.0}, {0.0, 0.0}, {3.0, 4.0}});
        e.feed(exp_map(base, TangentVector::zero(base)) == base ? 0.0 : 1.0);
        report.checks.push_back(e.result("exp-of-zero", 0.5, 1));
    }
    {
        MaxError e;
        const QPoint q0 = QPoint::constant(3, Vec{0.25, -1.0});
        const QPoint z({{1.0, 2.0}, {-0.5, 0.0}, {4.0, 4.0}});
        const QPoint expected({{0.75, 3.0}, {-0.75, 1.0}, {3.75, 5.0}});
        e.feed(distance(subtract(z, q0, 1.0), expected).g);
        report.checks.push_back(e.result("vertex-subtraction", eq_tol, 1));
    }
    {
        // [[x]] + [[-x]]: differentiable as a multiset at 0, affinely but not
        // strongly affinely approximatable there.
        MaxError e;
        const QFunction1D fx = [](double x) { return QPoint({{x}, {-x}}); };
        const DerivativeValue d = derivative(fx, 0.0);
        e.feed(distance(d.value, QPoint({{1.0}, {-1.0}})).g);
        const std::vector<AffineMap> good = {{{0.0}, {1.0}}, {{0.0}, {-1.0}}};
        const ApproxReport ok = affine_approx_error(fx, 0.0, good);
        e.feed(ok.approximatable ? 0.0 : 1.0);
        e.feed(ok.strong_condition ? 1.0 : 0.0);  // must fail
        const std::vector<AffineMap> bad = {{{0.0}, {2.0}}, {{0.0}, {-2.0}}};
        const ApproxReport no = affine_approx_error(fx, 0.0, bad);
        e.feed(!no.approximatable && no.quotients.back() > 0.5 ? 0.0 : 1.0);
        report.checks.push_back(e.result("affine-approximatable-example", 0.5, 4));
    }
    return finish(std::move(report));
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"pc",      "flat1d", "minkowski",     "tangent",
            "selection", "strata", "paper-examples"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      std::size_t trials, double tol) {
    if (name == "pc") return run_pc(seed, trials ? trials : 10000, tol);
    if (name == "flat1d") return run_flat1d(seed, trials ? trials : 10000, tol);
    if (name == "minkowski") return run_minkowski(seed, trials ? trials : 100, tol);
    if (name == "tangent") return run_tangent(seed, trials ? trials : 1000, tol);
    if (name == "selection") return run_selection(seed, trials ? trials : 50, tol);
    if (name == "strata") return run_strata(seed, trials ? trials : 1000, tol);
    if (name == "paper-examples") return run_paper_examples(tol);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace qspace

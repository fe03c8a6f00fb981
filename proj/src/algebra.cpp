#include "qspace/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qspace/errors.hpp"

namespace qspace {

namespace {

void require_same_grid(const BranchedCurve& f, const BranchedCurve& g) {
    if (f.domain_start() != g.domain_start() ||
        f.domain_end() != g.domain_end() ||
        f.sample_count() != g.sample_count())
        throw dimension_mismatch("curves live on different grids");
    if (f.dimension() != g.dimension())
        throw dimension_mismatch("curves have different target dimensions");
}

// G(f(x), Q[[0]]) = sqrt(sum_i |f_i(x)|^2); every pairing against Q copies of
// the origin costs the same.
double radius_at(const BranchedCurve& f, std::size_t k) {
    KahanSum s;
    for (std::size_t i = 0; i < f.branch_count(); ++i)
        s.add(squared_norm(f.value(i, k)));
    return std::sqrt(s.value());
}

}  // namespace

BranchedCurve::BranchedCurve(double a, double b,
                             std::vector<std::vector<Vec>> branches)
    : a_(a), b_(b), branches_(std::move(branches)) {
    if (!(a_ < b_)) throw error("curve domain needs a < b");
    if (branches_.empty()) throw error("curve needs at least one branch");
    const std::size_t m = branches_.front().size();
    if (m < 1) throw error("curve needs at least one sample");
    dim_ = branches_.front().front().size();
    if (dim_ == 0) throw error("curve values need dimension n >= 1");
    for (const auto& br : branches_) {
        if (br.size() != m) throw error("branches must share one grid");
        for (const Vec& v : br) {
            if (v.size() != dim_) throw error("branch values must share one dimension");
            if (!all_finite(v)) throw error("branch values must be finite");
        }
    }
}

BranchedCurve BranchedCurve::sample(
    double a, double b, std::size_t samples,
    const std::vector<std::function<Vec(double)>>& branches) {
    if (samples < 2) throw error("need at least two samples");
    std::vector<std::vector<Vec>> data(branches.size());
    const double h = (b - a) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < branches.size(); ++i) {
        data[i].reserve(samples);
        for (std::size_t k = 0; k < samples; ++k)
            data[i].push_back(branches[i](a + static_cast<double>(k) * h));
    }
    return BranchedCurve(a, b, std::move(data));
}

QPoint BranchedCurve::value_at(std::size_t k) const {
    std::vector<Vec> pts;
    pts.reserve(branch_count());
    for (const auto& br : branches_) pts.push_back(br[k]);
    return QPoint(std::move(pts));
}

BranchedCurve tensor_sum(const BranchedCurve& f, const BranchedCurve& g) {
    require_same_grid(f, g);
    const std::size_t m = f.sample_count();
    std::vector<std::vector<Vec>> branches;
    branches.reserve(f.branch_count() * g.branch_count());
    for (std::size_t i = 0; i < f.branch_count(); ++i)
        for (std::size_t j = 0; j < g.branch_count(); ++j) {
            std::vector<Vec> br(m);
            for (std::size_t k = 0; k < m; ++k)
                br[k] = add(f.value(i, k), g.value(j, k));
            branches.push_back(std::move(br));
        }
    return BranchedCurve(f.domain_start(), f.domain_end(), std::move(branches));
}

double dirichlet(const BranchedCurve& f) {
    if (f.sample_count() < 2)
        throw precondition_error("Dirichlet energy needs at least two samples");
    const double h = f.step();
    KahanSum s;
    for (std::size_t i = 0; i < f.branch_count(); ++i)
        for (std::size_t k = 0; k + 1 < f.sample_count(); ++k)
            s.add(squared_distance(f.value(i, k + 1), f.value(i, k)) / h);
    return s.value();
}

NormReport lp_norm(const BranchedCurve& f, double k) {
    if (!(k > 0.0)) throw precondition_error("norm order must satisfy k > 0");
    NormReport report;
    report.k = k;
    if (std::isinf(k)) {
        double worst = 0.0;
        for (std::size_t s = 0; s < f.sample_count(); ++s)
            worst = std::max(worst, radius_at(f, s));
        report.value = worst;
        return report;
    }
    if (f.sample_count() < 2)
        throw precondition_error("quadrature needs at least two samples");
    const double h = f.step();
    KahanSum quad;
    for (std::size_t s = 0; s < f.sample_count(); ++s) {
        const double w = (s == 0 || s + 1 == f.sample_count()) ? 0.5 : 1.0;
        quad.add(w * h * std::pow(radius_at(f, s), k));
    }
    report.value = std::pow(quad.value(), 1.0 / k);
    return report;
}

SlackReport weighted_triangle_check(const BranchedCurve& f,
                                    const BranchedCurve& g,
                                    std::size_t sample) {
    require_same_grid(f, g);
    const double p = static_cast<double>(f.branch_count());
    const double q = static_cast<double>(g.branch_count());
    KahanSum lhs2;
    for (std::size_t i = 0; i < f.branch_count(); ++i)
        for (std::size_t j = 0; j < g.branch_count(); ++j)
            lhs2.add(squared_norm(add(f.value(i, sample), g.value(j, sample))));
    SlackReport r;
    r.lhs = std::sqrt(lhs2.value());
    r.rhs = std::sqrt(q) * radius_at(f, sample) + std::sqrt(p) * radius_at(g, sample);
    r.slack = r.rhs - r.lhs;
    return r;
}

SlackReport weighted_minkowski_check(const BranchedCurve& f,
                                     const BranchedCurve& g, double k) {
    require_same_grid(f, g);
    if (!(k > 0.0)) throw precondition_error("norm order must satisfy k > 0");
    const double p = static_cast<double>(f.branch_count());
    const double q = static_cast<double>(g.branch_count());
    const BranchedCurve fg = tensor_sum(f, g);
    SlackReport r;
    if (k >= 1.0 || std::isinf(k)) {
        r.lhs = lp_norm(fg, k).value;
        r.rhs = std::sqrt(q) * lp_norm(f, k).value +
                std::sqrt(p) * lp_norm(g, k).value;
    } else {
        r.lhs = std::pow(lp_norm(fg, k).value, k);
        r.rhs = std::pow(q, 0.5 * k) * std::pow(lp_norm(f, k).value, k) +
                std::pow(p, 0.5 * k) * std::pow(lp_norm(g, k).value, k);
    }
    r.slack = r.rhs - r.lhs;
    return r;
}

std::vector<Vec> eta_curve(const BranchedCurve& f) {
    std::vector<Vec> mean(f.sample_count());
    for (std::size_t s = 0; s < f.sample_count(); ++s)
        mean[s] = eta(f.value_at(s));
    return mean;
}

double pairing_integral(const BranchedCurve& f, const BranchedCurve& g) {
    require_same_grid(f, g);
    if (f.sample_count() < 2)
        throw precondition_error("integration needs at least two samples");
    const std::vector<Vec> ef = eta_curve(f);
    const std::vector<Vec> eg = eta_curve(g);
    const double h = f.step();
    KahanSum s;
    for (std::size_t k = 0; k + 1 < f.sample_count(); ++k)
        s.add(dot(sub(ef[k + 1], ef[k]), sub(eg[k + 1], eg[k])) / h);
    return s.value();
}

}  // namespace qspace

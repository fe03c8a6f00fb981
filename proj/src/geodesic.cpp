#include "qspace/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qspace/errors.hpp"

namespace qspace {

namespace {

void require_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw precondition_error("parameter t = " + std::to_string(t) +
                                 " outside [0, 1]");
}

ComparisonReport compare(double lhs, double g2ac, double g2bc, double g2ab,
                         double t) {
    ComparisonReport r;
    r.lhs = lhs;
    r.rhs = (1.0 - t) * g2ac + t * g2bc - t * (1.0 - t) * g2ab;
    r.slack = r.lhs - r.rhs;
    return r;
}

}  // namespace

Geodesic::Geodesic(QPoint start, QPoint end, Matching matching)
    : start_(std::move(start)), end_(std::move(end)),
      matching_(std::move(matching)) {
    const std::size_t q = start_.multiplicity();
    if (matching_.sigma.size() != q)
        throw dimension_mismatch("matching size differs from multiplicity");
    std::vector<char> hit(q, 0);
    for (std::size_t j : matching_.sigma) {
        if (j >= q || hit[j])
            throw precondition_error("matching is not a permutation");
        hit[j] = 1;
    }
    // The type promises a distance-attaining matching; a suboptimal one would
    // silently break constant speed.
    KahanSum cost;
    for (std::size_t i = 0; i < q; ++i)
        cost.add(squared_distance(start_.point(i), end_.point(matching_.sigma[i])));
    const double optimal = distance(start_, end_).g_squared;
    if (std::abs(cost.value() - matching_.squared_cost) >
            1e-12 * std::max(1.0, matching_.squared_cost) ||
        cost.value() > optimal + 1e-12 * std::max(1.0, optimal))
        throw precondition_error("matching does not attain the distance");

    target_.resize(q);
    for (std::size_t i = 0; i < q; ++i)
        target_[i] = end_.point(matching_.sigma[i]);
    length_ = std::sqrt(matching_.squared_cost);
}

QPoint Geodesic::eval(double t) const {
    require_unit_interval(t);
    std::vector<Vec> pts(start_.multiplicity());
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = lerp(start_.point(i), target_[i], t);
    return QPoint(std::move(pts));
}

Geodesic geodesic(const QPoint& a, const QPoint& b) {
    DistanceResult d = distance(a, b);
    return Geodesic(a, b, std::move(d.witness));
}

Geodesic geodesic_1d(const QPoint& a, const QPoint& b) {
    DistanceResult d = sorted_matching_distance_1d(a, b);
    return Geodesic(a, b, std::move(d.witness));
}

ComparisonReport pc_comparison(const QPoint& a, const QPoint& b,
                               const QPoint& c, double t) {
    return pc_comparison(geodesic(a, b), c, t);
}

ComparisonReport pc_comparison(const Geodesic& gamma, const QPoint& c,
                               double t) {
    require_unit_interval(t);
    const double lhs = distance(gamma.eval(t), c).g_squared;
    const double g2ac = distance(gamma.start(), c).g_squared;
    const double g2bc = distance(gamma.end(), c).g_squared;
    const double g2ab = gamma.length() * gamma.length();
    return compare(lhs, g2ac, g2bc, g2ab, t);
}

ComparisonReport pc_comparison_all_optimal(const QPoint& a, const QPoint& b,
                                           const QPoint& c, double t,
                                           std::size_t cap) {
    require_unit_interval(t);
    const std::size_t q = a.multiplicity();
    const DistanceResult best = distance_bruteforce(a, b, cap);
    const double tol = 1e-12 * std::max(1.0, best.g_squared);

    std::vector<std::size_t> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    ComparisonReport worst;
    bool first = true;
    do {
        KahanSum s;
        for (std::size_t i = 0; i < q; ++i)
            s.add(squared_distance(a.point(i), b.point(perm[i])));
        if (s.value() > best.g_squared + tol) continue;
        Matching m{perm, s.value()};
        ComparisonReport r = pc_comparison(Geodesic(a, b, std::move(m)), c, t);
        if (first || r.slack < worst.slack) worst = r;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return worst;
}

ComparisonReport flatness_check_1d(const QPoint& a, const QPoint& b,
                                   const QPoint& c, double t) {
    if (a.dimension() != 1)
        throw dimension_mismatch("flatness check applies to n == 1 only");
    return pc_comparison(geodesic_1d(a, b), c, t);
}

double alpha(const QPoint& a, const QPoint& b, const QPoint& c) {
    const DistanceResult ab = distance(a, b);
    const DistanceResult ac = distance(a, c);
    if (ab.g == 0.0 || ac.g == 0.0)
        throw precondition_error("alpha is undefined when b or c equals a");
    const double g2bc = distance(b, c).g_squared;
    const double value =
        (ab.g_squared + ac.g_squared - g2bc) / (2.0 * ab.g * ac.g);
    return std::clamp(value, -1.0, 1.0);
}

AngleReport angle_report(const Geodesic& g1, const Geodesic& g2,
                         const std::vector<double>& schedule) {
    if (g1.start() != g2.start())
        throw precondition_error("angle requires geodesics with one base point");
    if (g1.length() == 0.0 || g2.length() == 0.0)
        throw precondition_error("angle is undefined for a zero-length geodesic");

    std::vector<double> params = schedule;
    const bool geometric_default = params.empty();
    if (geometric_default) {
        double t = 0.5;
        for (int k = 0; k < 30; ++k, t *= 0.5) params.push_back(t);
    }

    AngleReport report;
    const QPoint& base = g1.start();
    double prev = 0.0;
    for (double t : params) {
        if (!(t > 0.0 && t <= 1.0))
            throw precondition_error("angle schedule values must lie in (0, 1]");
        if (!report.params.empty() && t >= report.params.back())
            throw precondition_error("angle schedule must decrease");
        const double a = alpha(base, g1.eval(t), g2.eval(t));
        if (!report.alphas.empty() && a > prev + 1e-9)
            throw error("comparison cosine increased along a shrinking schedule");
        report.params.push_back(t);
        report.alphas.push_back(a);
        if (geometric_default && report.alphas.size() > 1 &&
            std::abs(a - prev) < 1e-10)
            break;
        prev = a;
    }
    report.angle = std::acos(std::clamp(report.alphas.back(), -1.0, 1.0));
    return report;
}

double angle(const Geodesic& g1, const Geodesic& g2,
             const std::vector<double>& schedule) {
    return angle_report(g1, g2, schedule).angle;
}

}  // namespace qspace

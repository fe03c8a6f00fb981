#include "qspace/qpoint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qspace/assignment.hpp"
#include "qspace/errors.hpp"

namespace qspace {

namespace {

void require_compatible(const QPoint& a, const QPoint& b) {
    if (a.multiplicity() != b.multiplicity())
        throw dimension_mismatch("multiplicity mismatch: Q=" +
                                 std::to_string(a.multiplicity()) + " vs Q=" +
                                 std::to_string(b.multiplicity()));
    if (a.dimension() != b.dimension())
        throw dimension_mismatch("ambient dimension mismatch: n=" +
                                 std::to_string(a.dimension()) + " vs n=" +
                                 std::to_string(b.dimension()));
}

// Squared cost of a given pairing, summed over the matched components in
// slot order. Brute force and the assignment solve both report costs through
// this, so equal pairings give bitwise-equal costs.
double pairing_cost(const QPoint& a, const QPoint& b,
                    const std::vector<std::size_t>& sigma) {
    KahanSum s;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        s.add(squared_distance(a.point(i), b.point(sigma[i])));
    return s.value();
}

DistanceResult make_result(const QPoint& a, const QPoint& b,
                           std::vector<std::size_t> sigma) {
    DistanceResult r;
    r.witness.sigma = std::move(sigma);
    r.witness.squared_cost = pairing_cost(a, b, r.witness.sigma);
    r.g_squared = r.witness.squared_cost;
    r.g = std::sqrt(r.g_squared);
    return r;
}

}  // namespace

std::vector<Vec> canonicalize(std::vector<Vec> points) {
    std::sort(points.begin(), points.end(), lex_less);
    return points;
}

QPoint::QPoint(std::vector<Vec> points) {
    if (points.empty()) throw error("QPoint needs at least one point");
    dim_ = points.front().size();
    if (dim_ == 0) throw error("QPoint needs ambient dimension n >= 1");
    for (const Vec& p : points) {
        if (p.size() != dim_)
            throw error("QPoint components must share one ambient dimension");
        if (!all_finite(p))
            throw error("QPoint coordinates must be finite");
    }
    points_ = canonicalize(std::move(points));
}

QPoint QPoint::constant(std::size_t q, Vec point) {
    if (q == 0) throw error("QPoint needs multiplicity Q >= 1");
    return QPoint(std::vector<Vec>(q, std::move(point)));
}

DistanceResult distance(const QPoint& a, const QPoint& b) {
    require_compatible(a, b);
    // Canonical argument order: both call directions run the same solve and
    // share its rounding, making the metric exactly symmetric.
    if (std::lexicographical_compare(b.points().begin(), b.points().end(),
                                     a.points().begin(), a.points().end(),
                                     lex_less)) {
        DistanceResult r = distance(b, a);
        std::vector<std::size_t> inverse(r.witness.sigma.size());
        for (std::size_t i = 0; i < inverse.size(); ++i)
            inverse[r.witness.sigma[i]] = i;
        r.witness.sigma = std::move(inverse);
        return r;
    }
    const std::size_t q = a.multiplicity();
    std::vector<double> cost(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            cost[i * q + j] = squared_distance(a.point(i), b.point(j));
    return make_result(a, b, solve_assignment(cost, q));
}

DistanceResult distance_bruteforce(const QPoint& a, const QPoint& b,
                                   std::size_t cap) {
    require_compatible(a, b);
    const std::size_t q = a.multiplicity();
    if (q > cap)
        throw precondition_error("brute-force cap exceeded: Q=" +
                                 std::to_string(q) + " > " +
                                 std::to_string(cap));
    std::vector<double> cost(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            cost[i * q + j] = squared_distance(a.point(i), b.point(j));

    std::vector<std::size_t> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    // next_permutation walks permutations in lexicographic order, so strict
    // improvement keeps the lexicographically smallest optimum.
    do {
        KahanSum s;
        for (std::size_t i = 0; i < q; ++i) s.add(cost[i * q + perm[i]]);
        if (s.value() < best_cost) {
            best_cost = s.value();
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return make_result(a, b, std::move(best));
}

DistanceResult sorted_matching_distance_1d(const QPoint& a, const QPoint& b) {
    require_compatible(a, b);
    if (a.dimension() != 1)
        throw dimension_mismatch("sorted matching applies to n == 1 only");
    // Canonical storage is ascending, so the order-of-height matching is the
    // identity permutation.
    std::vector<std::size_t> sigma(a.multiplicity());
    std::iota(sigma.begin(), sigma.end(), 0);
    return make_result(a, b, std::move(sigma));
}

Vec eta(const QPoint& a) {
    const std::size_t n = a.dimension();
    Vec mean(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        KahanSum s;
        for (std::size_t i = 0; i < a.multiplicity(); ++i) s.add(a.point(i)[k]);
        mean[k] = s.value() / static_cast<double>(a.multiplicity());
    }
    return mean;
}

}  // namespace qspace

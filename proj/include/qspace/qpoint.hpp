#pragma once

#include <cstddef>
#include <vector>

#include "qspace/numeric.hpp"

namespace qspace {

// Sorts a point list into the canonical multiset representative
// (lexicographic ascending on coordinates). Idempotent and insensitive to
// the input ordering.
std::vector<Vec> canonicalize(std::vector<Vec> points);

// An unordered multiset of Q points in R^n, stored canonically. Immutable
// after construction; all operations on it are pure functions.
class QPoint {
public:
    // Validates shape (nonempty, equal dimensions, finite coordinates) and
    // canonicalizes.
    explicit QPoint(std::vector<Vec> points);

    // Q[[a]]: q copies of one point.
    static QPoint constant(std::size_t q, Vec point);

    std::size_t multiplicity() const { return points_.size(); }  // Q
    std::size_t dimension() const { return dim_; }               // n
    const Vec& point(std::size_t i) const { return points_[i]; }
    const std::vector<Vec>& points() const { return points_; }

    friend bool operator==(const QPoint& a, const QPoint& b) {
        return a.points_ == b.points_;
    }
    friend bool operator!=(const QPoint& a, const QPoint& b) { return !(a == b); }

private:
    std::vector<Vec> points_;
    std::size_t dim_;
};

// A permutation pairing position i of one multiset with position sigma[i]
// of another, together with its squared matching cost.
struct Matching {
    std::vector<std::size_t> sigma;
    double squared_cost = 0.0;
};

struct DistanceResult {
    double g = 0.0;
    double g_squared = 0.0;
    Matching witness;
};

// G(a,b): the exact minimum over all Q! pairings of the summed squared
// component distances, computed by an O(Q^3) assignment solve on the
// squared-Euclidean cost matrix. The witness attains g_squared.
DistanceResult distance(const QPoint& a, const QPoint& b);

// Exhaustive enumeration of all Q! pairings; the test oracle. Ties break to
// the lexicographically smallest permutation. Throws when Q exceeds cap.
DistanceResult distance_bruteforce(const QPoint& a, const QPoint& b,
                                   std::size_t cap = 8);

// n == 1 fast path: the i-th smallest of a pairs with the i-th smallest of
// b, which is optimal on the line.
DistanceResult sorted_matching_distance_1d(const QPoint& a, const QPoint& b);

// Averaging map: the arithmetic mean of the points. Contracts distances by
// a factor of Q^{-1/2}.
Vec eta(const QPoint& a);

}  // namespace qspace

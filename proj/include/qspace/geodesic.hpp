#pragma once

#include <vector>

#include "qspace/qpoint.hpp"

namespace qspace {

// Matched-linear constant-speed path realizing G(start, end). The matching is
// fixed at construction and evaluation never re-solves the assignment, so
// sampling cannot jump between non-unique optima.
class Geodesic {
public:
    // The matching must attain distance(start, end); the factories below
    // guarantee that.
    Geodesic(QPoint start, QPoint end, Matching matching);

    // Canonicalized sample at t in [0, 1].
    QPoint eval(double t) const;

    const QPoint& start() const { return start_; }
    const QPoint& end() const { return end_; }
    const Matching& matching() const { return matching_; }
    double length() const { return length_; }

private:
    QPoint start_;
    QPoint end_;
    Matching matching_;
    std::vector<Vec> target_;  // end component matched to start slot i
    double length_;
};

// Geodesic along an optimal matching from the assignment solve.
Geodesic geodesic(const QPoint& a, const QPoint& b);

// n == 1: the unique geodesic, matching components in order of height.
Geodesic geodesic_1d(const QPoint& a, const QPoint& b);

// lhs = G^2(gamma(t), c) against the comparison chord
// rhs = (1-t) G^2(a,c) + t G^2(b,c) - t(1-t) G^2(a,b).
// slack = lhs - rhs; nonnegative in this space, zero on the line.
struct ComparisonReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
};

// Recomputes the geodesic internally from (a, b).
ComparisonReport pc_comparison(const QPoint& a, const QPoint& b,
                               const QPoint& c, double t);

// For callers that need a specific geodesic among non-unique ones.
ComparisonReport pc_comparison(const Geodesic& gamma, const QPoint& c, double t);

// Oracle mode: evaluates the comparison for every optimal matching of (a, b)
// (exhaustive, Q <= cap) and returns the report with the smallest slack.
ComparisonReport pc_comparison_all_optimal(const QPoint& a, const QPoint& b,
                                           const QPoint& c, double t,
                                           std::size_t cap = 8);

// n == 1 comparison; equality holds there, so |slack| should vanish.
ComparisonReport flatness_check_1d(const QPoint& a, const QPoint& b,
                                   const QPoint& c, double t);

// Comparison cosine alpha(a; b, c), clamped to [-1, 1] against rounding.
// Requires b != a and c != a as multisets.
double alpha(const QPoint& a, const QPoint& b, const QPoint& c);

struct AngleReport {
    double angle = 0.0;                // radians, [0, pi]
    std::vector<double> params;        // sampled t = s values
    std::vector<double> alphas;        // alpha at each sample
};

// Angle between two geodesics leaving the same point: arccos of the limit of
// alpha(base; g1(t), g2(s)) along a decreasing schedule with t = s. The
// sampled alphas are nonincreasing as the parameters shrink; the default
// schedule is 2^-k, k = 1..30, stopping once successive alphas differ by
// less than 1e-10.
AngleReport angle_report(const Geodesic& g1, const Geodesic& g2,
                         const std::vector<double>& schedule = {});
double angle(const Geodesic& g1, const Geodesic& g2,
             const std::vector<double>& schedule = {});

}  // namespace qspace

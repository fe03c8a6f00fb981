#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qspace/algebra.hpp"
#include "qspace/qpoint.hpp"
#include "qspace/strata.hpp"

namespace qspace {

using QFunction1D = std::function<QPoint(double)>;
using QFunctionND = std::function<QPoint(const Vec&)>;

// Neighborhood P(q; r): multisets whose points split group-wise into the open
// r-balls around q's supports, exactly k_i per ball. Requires r < r0, half
// the minimum support separation, so the balls are disjoint.
struct NeighborhoodSpec {
    QPoint center;
    Signature sig;
    double radius;
    double r0;

    NeighborhoodSpec(QPoint q, double r);
};

struct NeighborhoodGrouping {
    bool inside = false;
    // members[i]: indices of z's canonical points inside the ball around
    // support i. Meaningful only when inside.
    std::vector<std::vector<std::size_t>> members;
};

NeighborhoodGrouping in_neighborhood(const NeighborhoodSpec& spec,
                                     const QPoint& z);

// z(-)q: the multiset of group-wise differences z_j^{(i)} - q_i. For a
// single-support q the subtraction is defined for any z; otherwise z must lie
// in P(q; r).
QPoint subtract(const QPoint& z, const QPoint& q, double r);

// Same differences, kept per signature group of q (support order).
std::vector<std::vector<Vec>> subtract_grouped(const QPoint& z, const QPoint& q,
                                               double r);

// Shrinking-step schedule h = h0 * 2^-k, k = 0..k_max, declaring convergence
// once three successive quotient multisets (and the two one-sided limits) are
// pairwise within converge_tol in G distance.
struct QuotientSchedule {
    double h0 = 0.015625;  // 2^-6
    int k_max = 24;
    double converge_tol = 1e-7;
};

struct DerivativeValue {
    QPoint value;                            // quotient multiset at the smallest h
    std::vector<std::vector<Vec>> grouped;   // components per signature group of f(x0)
    double df_squared = 0.0;                 // sum of squared component magnitudes
    std::vector<double> certificate;         // successive right-quotient G gaps
    double h_used = 0.0;
};

// lim [f(x)(-)f(x0)]/(x - x0); both one-sided limits must agree as multisets.
DerivativeValue derivative(const QFunction1D& f, double x0,
                           const QuotientSchedule& sched = {});

// lim_{t->0} [f(x0 + t v)(-)f(x0)]/t.
DerivativeValue directional_derivative(const QFunctionND& f, const Vec& x0,
                                       const Vec& v,
                                       const QuotientSchedule& sched = {});

// A(x) = value + slope * (x - x0).
struct AffineMap {
    Vec value;
    Vec slope;
};

struct ApproxReport {
    std::vector<double> hs;
    std::vector<double> quotients;  // max of the two one-sided quotients per h
    bool approximatable = false;    // quotient fell below tol at the finest h
    bool strong_condition = false;  // A_i = A_j whenever A_i(x0) = A_j(x0)
    bool strong = false;            // both
};

// Samples G(f(x), sum_i [[A_i(x)]]) / |x - x0| on a shrinking schedule; the
// candidate values at x0 must reproduce f(x0) as a multiset.
ApproxReport affine_approx_error(const QFunction1D& f, double x0,
                                 const std::vector<AffineMap>& candidate,
                                 const QuotientSchedule& sched = {},
                                 double tol = 1e-6);

// A Q-valued function sampled on a uniform grid over [a, b].
struct SampledCurve {
    double a = 0.0;
    double b = 0.0;
    std::vector<QPoint> samples;

    SampledCurve(double a, double b, std::vector<QPoint> samples);
    std::size_t multiplicity() const { return samples.front().multiplicity(); }
    std::size_t dimension() const { return samples.front().dimension(); }
    double step() const {
        return (b - a) / static_cast<double>(samples.size() - 1);
    }
    double x(std::size_t k) const { return a + static_cast<double>(k) * step(); }
};

// A decomposition into Q single-valued sampled branches shares its shape
// with a branched curve.
using Selection = BranchedCurve;

// Greedy branch tracking: branches extend along the optimal matching between
// consecutive samples (lexicographically smallest permutation among optima).
// The branch multiset reproduces the input exactly at every sample, and each
// branch jump is bounded by the per-step matching displacement. Steps whose
// displacement exceeds half the support separation at both endpoints are
// reported as ambiguous with a refinement suggestion.
Selection continuous_selection(const SampledCurve& f);

struct DifferentiableSelection {
    Selection selection;                   // branches agreeing at x0 are adjacent
    std::vector<Vec> branch_derivatives;   // the group affine slopes
    std::vector<std::size_t> branch_groups;
    std::vector<Vec> group_slopes;
    std::vector<double> quotient_profile;  // strong-approx quotients, coarse to fine
};

// Reorders a continuous selection so branches agreeing at x0 are grouped,
// fits one affine map per group by least squares over a symmetric shrinking
// window, checks strong affine approximatability numerically, and assigns
// each branch its group's slope as derivative. Rejects functions that are
// not strongly affinely approximatable at x0.
DifferentiableSelection differentiable_selection(const SampledCurve& f,
                                                 double x0,
                                                 double strong_tol = 1e-3);

}  // namespace qspace

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qspace/qpoint.hpp"

namespace qspace {

// A multiple-valued function on an interval, stored as p sampled branches
// (polylines) over one uniform grid. The value at a grid point is the
// multiset of branch values there.
class BranchedCurve {
public:
    // branches[i][k] is branch i at grid node k; all branches share the grid.
    BranchedCurve(double a, double b, std::vector<std::vector<Vec>> branches);

    static BranchedCurve sample(double a, double b, std::size_t samples,
                                const std::vector<std::function<Vec(double)>>& branches);

    double domain_start() const { return a_; }
    double domain_end() const { return b_; }
    std::size_t branch_count() const { return branches_.size(); }   // p
    std::size_t sample_count() const { return branches_.front().size(); }
    std::size_t dimension() const { return dim_; }
    double step() const { return (b_ - a_) / static_cast<double>(sample_count() - 1); }
    double x(std::size_t k) const { return a_ + static_cast<double>(k) * step(); }

    const Vec& value(std::size_t branch, std::size_t k) const {
        return branches_[branch][k];
    }
    const std::vector<std::vector<Vec>>& branches() const { return branches_; }

    QPoint value_at(std::size_t k) const;

private:
    double a_, b_;
    std::vector<std::vector<Vec>> branches_;
    std::size_t dim_;
};

// (f (+) g): the pq-valued function with branch (i, j) = f_i + g_j pointwise.
BranchedCurve tensor_sum(const BranchedCurve& f, const BranchedCurve& g);

// Dirichlet energy of piecewise-affine branches, summed segment by segment in
// closed form: each segment contributes |delta|^2 / h.
double dirichlet(const BranchedCurve& f);

struct NormReport {
    double k = 0.0;      // infinity() for the sup norm
    double value = 0.0;
};

// L^k norm of x -> G(f(x), Q[[0]]) by trapezoid quadrature; the sup norm is
// the max over grid samples (the curves here are polylines).
NormReport lp_norm(const BranchedCurve& f, double k);

struct SlackReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs; nonnegative when the inequality holds
};

// Pointwise weighted triangle inequality at one grid sample:
// G(f(+)g, pq[[0]]) <= q^{1/2} G(f, p[[0]]) + p^{1/2} G(g, q[[0]]).
SlackReport weighted_triangle_check(const BranchedCurve& f,
                                    const BranchedCurve& g, std::size_t sample);

// Weighted Minkowski inequality; picks the k >= 1 or 0 < k < 1 form.
// For k >= 1:  ||f(+)g||_k <= q^{1/2} ||f||_k + p^{1/2} ||g||_k,
// for k < 1 the same with k-th powers and q^{k/2}, p^{k/2} weights.
SlackReport weighted_minkowski_check(const BranchedCurve& f,
                                     const BranchedCurve& g, double k);

// eta composed with the curve: the single-valued mean polyline.
std::vector<Vec> eta_curve(const BranchedCurve& f);

// Exact integral of <(eta o f)', (eta o g)'> for piecewise-affine data; the
// cross term of the tensor-sum Dirichlet identity.
double pairing_integral(const BranchedCurve& f, const BranchedCurve& g);

}  // namespace qspace

#pragma once

#include <cstddef>
#include <vector>

#include "qspace/qpoint.hpp"
#include "qspace/strata.hpp"

namespace qspace {

// An element of the tangent cone at a base point: one velocity multiset per
// signature group, block i holding as many velocities as the group has
// copies. Block order follows the base signature's support order; the base
// is stored inside the vector so mismatches are detectable.
class TangentVector {
public:
    TangentVector(QPoint base, std::vector<std::vector<Vec>> blocks);

    static TangentVector zero(const QPoint& base);

    const QPoint& base() const { return base_; }
    const Signature& base_signature() const { return sig_; }
    const std::vector<std::vector<Vec>>& blocks() const { return blocks_; }

    // sqrt of the summed squared velocities; the metric velocity of the
    // induced geodesic.
    double norm() const;

    TangentVector scaled(double lambda) const;

private:
    QPoint base_;
    Signature sig_;
    std::vector<std::vector<Vec>> blocks_;  // each block canonicalized
};

// d_A(u, v): square root of the sum over blocks of squared block-wise G
// distances, each block a k_i-point assignment problem.
double tangent_distance(const TangentVector& u, const TangentVector& v);

// The same distance through its defining limit G(gamma_u(t), gamma_v(t))/t,
// evaluated at the smallest t of the schedule. For matched-linear geodesics
// the quotient is exactly constant below the support separation scale.
double tangent_distance_limit(const TangentVector& u, const TangentVector& v,
                              const std::vector<double>& schedule);

// Endpoint of the induced geodesic at time 1: each velocity added to its
// group's support point.
QPoint exp_map(const QPoint& base, const TangentVector& v);

// epsilon = delta/2; within the epsilon-ball of tangent vectors exp is an
// isometry. +infinity for a single-support base, where exp is a global
// isometry onto the whole space.
double exp_isometry_radius(const QPoint& base);

}  // namespace qspace

#pragma once

#include <cstddef>
#include <vector>

#include "qspace/geodesic.hpp"
#include "qspace/qpoint.hpp"

namespace qspace {

// How a multiset's Q points collapse onto J distinct support points.
// Supports are listed in canonical (lexicographic) order; multiplicities is
// the ascending (k_1 <= ... <= k_J) profile of the group sizes.
struct Signature {
    std::size_t J = 0;
    std::vector<std::size_t> multiplicities;   // ascending profile
    std::vector<Vec> support;                  // lexicographic order
    std::vector<std::size_t> group_sizes;      // aligned with support
    std::vector<std::size_t> group_of_point;   // canonical point index -> support index

    bool same_decomposition(const Signature& other) const {
        return J == other.J && multiplicities == other.multiplicities;
    }
};

// Groups points whose pairwise distance is <= tol (single linkage) into
// support points. tol = 0 means exact coincidence; with tol > 0 a cluster of
// diameter > 2*tol is reported as ambiguous rather than guessed, and the
// support point is the cluster centroid.
Signature signature(const QPoint& p, double tol = 0.0);

struct PermissibleDecomposition {
    std::size_t J = 0;
    std::vector<std::size_t> multiplicities;  // ascending, summing to Q
};

// All permissible decompositions of Q, sorted lexicographically by
// multiplicity tuple. The count is the partition number p(Q).
std::vector<PermissibleDecomposition> enumerate_decompositions(std::size_t q);

// Minimum pairwise distance between distinct supports; +infinity when J < 2.
double min_support_separation(const Signature& sig);

// delta = half the minimum support separation; +infinity for J == 1 by
// convention (the defining infimum is over an empty set).
double stratum_radius(const QPoint& p);

struct StratumPathReport {
    Geodesic path;
    bool stays = false;     // every sample kept the decomposition
    std::size_t samples = 0;
};

// For b in the same stratum as a with supports within delta/4^Q of a's, the
// geodesic between them cannot leave the stratum. The closeness bound is
// enforced as a precondition: far-apart points in one stratum genuinely
// escape it, so a violation flags the unmet hypothesis, not a defect.
StratumPathReport stratum_local_geodesic_check(const QPoint& a, const QPoint& b,
                                               std::size_t samples = 257);

// Path inside the top stratum (all points distinct): lexicographically
// sorted components interpolate linearly and never collide. Returns the
// sampled path; every sample is verified to have Q distinct points.
std::vector<QPoint> connect_in_top_stratum(const QPoint& a, const QPoint& b,
                                           std::size_t samples = 201);

// Bijective isometry between the delta/2 ball around a top-stratum point and
// a Euclidean ball in R^{nQ}: forward lists a query's components in the
// order matched to the center's, backward splits a coordinate vector back
// into a multiset.
class LocalChart {
public:
    LocalChart(QPoint center, double radius);

    const QPoint& center() const { return center_; }
    double radius() const { return radius_; }
    const Vec& center_image() const { return center_image_; }

    Vec forward(const QPoint& b) const;
    QPoint backward(const Vec& x) const;

private:
    QPoint center_;
    double radius_;
    Vec center_image_;
};

LocalChart local_chart(const QPoint& a);

// psi: canonical coordinates concatenated into R^{nQ}. An isometry only for
// n == 1; in higher dimension it is not even Lipschitz.
Vec lex_embedding(const QPoint& p);

}  // namespace qspace

#include "qspace/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspace/errors.hpp"

namespace qspace {

TangentVector::TangentVector(QPoint base, std::vector<std::vector<Vec>> blocks)
    : base_(std::move(base)), sig_(signature(base_, 0.0)),
      blocks_(std::move(blocks)) {
    if (blocks_.size() != sig_.J)
        throw dimension_mismatch("expected one block per signature group (J=" +
                                 std::to_string(sig_.J) + ")");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].size() != sig_.group_sizes[i])
            throw dimension_mismatch("block " + std::to_string(i) +
                                     " must hold " +
                                     std::to_string(sig_.group_sizes[i]) +
                                     " velocities");
        for (const Vec& v : blocks_[i]) {
            if (v.size() != base_.dimension())
                throw dimension_mismatch("velocity dimension differs from base");
            if (!all_finite(v)) throw error("velocities must be finite");
        }
        blocks_[i] = canonicalize(std::move(blocks_[i]));
    }
}

TangentVector TangentVector::zero(const QPoint& base) {
    const Signature sig = signature(base, 0.0);
    std::vector<std::vector<Vec>> blocks(sig.J);
    for (std::size_t i = 0; i < sig.J; ++i)
        blocks[i].assign(sig.group_sizes[i], Vec(base.dimension(), 0.0));
    return TangentVector(base, std::move(blocks));
}

double TangentVector::norm() const {
    KahanSum s;
    for (const auto& block : blocks_)
        for (const Vec& v : block) s.add(squared_norm(v));
    return std::sqrt(s.value());
}

TangentVector TangentVector::scaled(double lambda) const {
    std::vector<std::vector<Vec>> blocks(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        blocks[i].reserve(blocks_[i].size());
        for (const Vec& v : blocks_[i]) blocks[i].push_back(scale(v, lambda));
    }
    return TangentVector(base_, std::move(blocks));
}

namespace {

void require_same_base(const TangentVector& u, const TangentVector& v) {
    if (u.base() != v.base())
        throw precondition_error("tangent vectors live at different base points");
}

}  // namespace

double tangent_distance(const TangentVector& u, const TangentVector& v) {
    require_same_base(u, v);
    KahanSum s;
    for (std::size_t i = 0; i < u.blocks().size(); ++i) {
        const QPoint bu(u.blocks()[i]);
        const QPoint bv(v.blocks()[i]);
        s.add(distance(bu, bv).g_squared);
    }
    return std::sqrt(s.value());
}

double tangent_distance_limit(const TangentVector& u, const TangentVector& v,
                              const std::vector<double>& schedule) {
    require_same_base(u, v);
    if (schedule.empty()) throw precondition_error("empty schedule");
    double t = schedule.front();
    for (double s : schedule) {
        if (!(s > 0.0)) throw precondition_error("schedule values must be positive");
        t = std::min(t, s);
    }
    const QPoint pu = exp_map(u.base(), u.scaled(t));
    const QPoint pv = exp_map(v.base(), v.scaled(t));
    return distance(pu, pv).g / t;
}

QPoint exp_map(const QPoint& base, const TangentVector& v) {
    if (v.base() != base)
        throw precondition_error("tangent vector is attached to another base");
    const Signature& sig = v.base_signature();
    std::vector<Vec> pts;
    pts.reserve(base.multiplicity());
    for (std::size_t i = 0; i < sig.J; ++i)
        for (const Vec& vel : v.blocks()[i])
            pts.push_back(add(sig.support[i], vel));
    return QPoint(std::move(pts));
}

double exp_isometry_radius(const QPoint& base) {
    return 0.5 * stratum_radius(base);
}

}  // namespace qspace

#include "qspace/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "qspace/errors.hpp"

namespace qspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

QPoint flatten(const std::vector<std::vector<Vec>>& grouped) {
    std::vector<Vec> pts;
    for (const auto& g : grouped) pts.insert(pts.end(), g.begin(), g.end());
    return QPoint(std::move(pts));
}

std::vector<std::vector<Vec>> scale_grouped(std::vector<std::vector<Vec>> grouped,
                                            double s) {
    for (auto& g : grouped) {
        for (Vec& v : g) v = scale(v, s);
        g = canonicalize(std::move(g));
    }
    return grouped;
}

// Quotient-limit engine shared by derivative and directional_derivative:
// differentiates t -> f(t) at t = 0 through the subtraction operator.
DerivativeValue quotient_limit(const std::function<QPoint(double)>& f,
                               const QuotientSchedule& sched) {
    const QPoint q0 = f(0.0);
    const Signature sig = signature(q0, 0.0);
    const double r0 = 0.5 * min_support_separation(sig);
    const double r = sig.J == 1 ? 1.0 : 0.5 * r0;

    NeighborhoodSpec spec(q0, r);
    std::deque<QPoint> rights, lefts;
    std::vector<std::vector<Vec>> last_grouped;
    std::vector<double> certificate;
    double h_used = 0.0;

    double h = sched.h0;
    for (int k = 0; k <= sched.k_max; ++k, h *= 0.5) {
        const QPoint zp = f(h);
        const QPoint zm = f(-h);
        if (sig.J > 1 &&
            (!in_neighborhood(spec, zp).inside || !in_neighborhood(spec, zm).inside))
            continue;  // h still too large for the subtraction to be defined

        auto grouped_r = scale_grouped(subtract_grouped(zp, q0, r), 1.0 / h);
        auto grouped_l = scale_grouped(subtract_grouped(zm, q0, r), -1.0 / h);
        QPoint qr = flatten(grouped_r);
        QPoint ql = flatten(grouped_l);

        if (!rights.empty())
            certificate.push_back(distance(rights.back(), qr).g);
        rights.push_back(qr);
        lefts.push_back(ql);
        if (rights.size() > 3) {
            rights.pop_front();
            lefts.pop_front();
        }
        last_grouped = std::move(grouped_r);
        h_used = h;

        if (rights.size() == 3) {
            const double tol = sched.converge_tol;
            bool ok = distance(rights[2], ql).g <= tol;  // two-sided agreement
            for (std::size_t i = 0; ok && i < 3; ++i)
                for (std::size_t j = i + 1; ok && j < 3; ++j)
                    ok = distance(rights[i], rights[j]).g <= tol &&
                         distance(lefts[i], lefts[j]).g <= tol;
            if (ok) {
                DerivativeValue out{std::move(qr), std::move(last_grouped), 0.0,
                                    std::move(certificate), h_used};
                KahanSum mag;
                for (std::size_t i = 0; i < out.value.multiplicity(); ++i)
                    mag.add(squared_norm(out.value.point(i)));
                out.df_squared = mag.value();
                return out;
            }
        }
    }
    std::string gaps;
    for (std::size_t i = certificate.size() > 3 ? certificate.size() - 3 : 0;
         i < certificate.size(); ++i)
        gaps += " " + std::to_string(certificate[i]);
    throw not_differentiable(
        "quotients did not converge (components diverge, one-sided limits "
        "disagree, or the neighborhood precondition failed); last gaps:" + gaps);
}

}  // namespace

NeighborhoodSpec::NeighborhoodSpec(QPoint q, double r)
    : center(std::move(q)), sig(signature(center, 0.0)), radius(r),
      r0(0.5 * min_support_separation(sig)) {
    if (!(r > 0.0)) throw precondition_error("neighborhood radius must be positive");
    if (!(r < r0))
        throw precondition_error(
            "neighborhood radius must stay below half the support separation");
}

NeighborhoodGrouping in_neighborhood(const NeighborhoodSpec& spec,
                                     const QPoint& z) {
    if (z.dimension() != spec.center.dimension() ||
        z.multiplicity() != spec.center.multiplicity())
        throw dimension_mismatch("incompatible neighborhood query");
    NeighborhoodGrouping g;
    g.members.resize(spec.sig.J);
    for (std::size_t j = 0; j < z.multiplicity(); ++j) {
        bool placed = false;
        for (std::size_t i = 0; i < spec.sig.J; ++i) {
            if (euclidean_distance(z.point(j), spec.sig.support[i]) < spec.radius) {
                g.members[i].push_back(j);
                placed = true;
                break;  // balls are disjoint since r < r0
            }
        }
        if (!placed) {
            g.inside = false;
            return g;
        }
    }
    g.inside = true;
    for (std::size_t i = 0; i < spec.sig.J; ++i)
        if (g.members[i].size() != spec.sig.group_sizes[i]) {
            g.inside = false;
            break;
        }
    return g;
}

std::vector<std::vector<Vec>> subtract_grouped(const QPoint& z, const QPoint& q,
                                               double r) {
    if (z.dimension() != q.dimension() || z.multiplicity() != q.multiplicity())
        throw dimension_mismatch("subtraction needs operands of one shape");
    const Signature sig = signature(q, 0.0);
    std::vector<std::vector<Vec>> grouped(sig.J);
    if (sig.J == 1) {
        // q = Q[[q_0]]: globally defined, z(-)q = sum [[z_i - q_0]].
        for (std::size_t j = 0; j < z.multiplicity(); ++j)
            grouped[0].push_back(sub(z.point(j), sig.support[0]));
        return grouped;
    }
    NeighborhoodSpec spec(q, r);
    const NeighborhoodGrouping g = in_neighborhood(spec, z);
    if (!g.inside)
        throw precondition_error(
            "subtraction undefined: z does not lie in P(q; r)");
    for (std::size_t i = 0; i < sig.J; ++i)
        for (std::size_t j : g.members[i])
            grouped[i].push_back(sub(z.point(j), sig.support[i]));
    return grouped;
}

QPoint subtract(const QPoint& z, const QPoint& q, double r) {
    return flatten(subtract_grouped(z, q, r));
}

DerivativeValue derivative(const QFunction1D& f, double x0,
                           const QuotientSchedule& sched) {
    return quotient_limit([&](double t) { return f(x0 + t); }, sched);
}

DerivativeValue directional_derivative(const QFunctionND& f, const Vec& x0,
                                       const Vec& v,
                                       const QuotientSchedule& sched) {
    if (x0.size() != v.size())
        throw dimension_mismatch("direction and base point sizes differ");
    return quotient_limit(
        [&](double t) { return f(add(x0, scale(v, t))); }, sched);
}

ApproxReport affine_approx_error(const QFunction1D& f, double x0,
                                 const std::vector<AffineMap>& candidate,
                                 const QuotientSchedule& sched, double tol) {
    if (candidate.empty()) throw precondition_error("empty candidate");
    const QPoint f0 = f(x0);
    for (const AffineMap& map : candidate)
        if (map.value.size() != f0.dimension() ||
            map.slope.size() != f0.dimension())
            throw dimension_mismatch("affine maps must target the value space");
    std::vector<Vec> at_x0;
    for (const AffineMap& map : candidate) at_x0.push_back(map.value);
    const QPoint c0{at_x0};
    const double match = distance(c0, f0).g;
    if (match > 1e-12 * std::max(1.0, norm(lex_embedding(f0))))
        throw precondition_error(
            "candidate values at x0 do not reproduce f(x0) as a multiset");

    auto candidate_at = [&](double dx) {
        std::vector<Vec> pts;
        pts.reserve(candidate.size());
        for (const AffineMap& map : candidate)
            pts.push_back(add(map.value, scale(map.slope, dx)));
        return QPoint(std::move(pts));
    };

    ApproxReport report;
    double h = sched.h0;
    for (int k = 0; k <= sched.k_max; ++k, h *= 0.5) {
        const double right = distance(f(x0 + h), candidate_at(h)).g / h;
        const double left = distance(f(x0 - h), candidate_at(-h)).g / h;
        report.hs.push_back(h);
        report.quotients.push_back(std::max(right, left));
    }
    // The quotient of a first-order match decays until rounding noise
    // (~eps|f|/h) takes over, while a mismatch stays bounded below at every
    // scale; judge by the best of the finest samples.
    double best = report.quotients.back();
    for (std::size_t k = report.quotients.size() > 8 ? report.quotients.size() - 8
                                                     : 0;
         k < report.quotients.size(); ++k)
        best = std::min(best, report.quotients[k]);
    report.approximatable = best <= tol;

    // Definition of "strong": maps sharing the value at x0 must coincide.
    report.strong_condition = true;
    for (std::size_t i = 0; i < candidate.size() && report.strong_condition; ++i)
        for (std::size_t j = i + 1; j < candidate.size(); ++j) {
            if (candidate[i].value != candidate[j].value) continue;
            const double gap = norm(sub(candidate[i].slope, candidate[j].slope));
            const double scale_ij = std::max(
                1.0, std::max(norm(candidate[i].slope), norm(candidate[j].slope)));
            if (gap > 1e-9 * scale_ij) {
                report.strong_condition = false;
                break;
            }
        }
    report.strong = report.approximatable && report.strong_condition;
    return report;
}

SampledCurve::SampledCurve(double a_, double b_, std::vector<QPoint> samples_)
    : a(a_), b(b_), samples(std::move(samples_)) {
    if (!(a < b)) throw error("curve domain needs a < b");
    if (samples.size() < 2) throw error("need at least two samples");
    for (const QPoint& s : samples)
        if (s.multiplicity() != samples.front().multiplicity() ||
            s.dimension() != samples.front().dimension())
            throw dimension_mismatch("samples must share multiplicity and dimension");
}

namespace {

// Distance from component i to the nearest distinct value in the same
// multiset; +infinity when every other component coincides with it.
double local_separation(const QPoint& p, std::size_t i) {
    double best = kInf;
    for (std::size_t j = 0; j < p.multiplicity(); ++j) {
        if (j == i) continue;
        const double d = euclidean_distance(p.point(i), p.point(j));
        if (d > 0.0) best = std::min(best, d);
    }
    return best;
}

}  // namespace

Selection continuous_selection(const SampledCurve& f) {
    const std::size_t q = f.multiplicity();
    const std::size_t m = f.samples.size();
    std::vector<std::vector<Vec>> branches(q, std::vector<Vec>(m));
    std::vector<std::size_t> slot(q);  // branch j's index in the canonical order
    std::iota(slot.begin(), slot.end(), 0);
    for (std::size_t j = 0; j < q; ++j) branches[j][0] = f.samples[0].point(j);

    for (std::size_t k = 0; k + 1 < m; ++k) {
        const QPoint& cur = f.samples[k];
        const QPoint& nxt = f.samples[k + 1];
        const DistanceResult d =
            q <= 8 ? distance_bruteforce(cur, nxt) : distance(cur, nxt);
        // A component whose step displacement exceeds half the separation to
        // its neighbors at both endpoints is pinned down by neither; its
        // identity is lost at this resolution.
        for (std::size_t i = 0; i < q; ++i) {
            const double move =
                euclidean_distance(cur.point(i), nxt.point(d.witness.sigma[i]));
            if (move > 0.5 * local_separation(cur, i) &&
                move > 0.5 * local_separation(nxt, d.witness.sigma[i]))
                throw ambiguity_error(
                    "branch tracking ambiguous between samples " +
                    std::to_string(k) + " and " + std::to_string(k + 1) +
                    ": a matched component moved " + std::to_string(move) +
                    ", more than half its separation from neighbors at both "
                    "ends; refine the grid");
        }
        for (std::size_t j = 0; j < q; ++j) {
            slot[j] = d.witness.sigma[slot[j]];
            branches[j][k + 1] = nxt.point(slot[j]);
        }
    }
    return Selection(f.a, f.b, std::move(branches));
}

DifferentiableSelection differentiable_selection(const SampledCurve& f,
                                                 double x0, double strong_tol) {
    const double h = f.step();
    const double pos = (x0 - f.a) / h;
    const double idx_d = std::round(pos);
    if (std::abs(pos - idx_d) > 1e-9)
        throw precondition_error("x0 must coincide with a grid point");
    const std::size_t idx = static_cast<std::size_t>(idx_d);
    if (idx < 1 || idx + 1 >= f.samples.size())
        throw precondition_error("x0 must be interior to the grid");

    const Selection sel = continuous_selection(f);
    const std::size_t q = f.multiplicity();
    const Signature sig = signature(f.samples[idx], 0.0);

    // Branch -> signature group of its value at x0 (values are exactly the
    // canonical points of f(x0), so the lookup is exact).
    std::vector<std::size_t> group(q, sig.J);
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = 0; i < sig.J; ++i)
            if (sel.value(j, idx) == sig.support[i]) {
                group[j] = i;
                break;
            }

    std::vector<std::size_t> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return group[a] < group[b]; });

    // One affine map per group, fitted by least squares over a symmetric
    // window. Symmetry cancels the second-order term, so the slope error is
    // O((W h)^2) for smooth branches.
    const std::size_t W = std::min<std::size_t>(
        8, std::min(idx, f.samples.size() - 1 - idx));
    const std::size_t n = f.dimension();
    std::vector<Vec> slopes(sig.J, Vec(n, 0.0));
    for (std::size_t i = 0; i < sig.J; ++i) {
        Vec num(n, 0.0);
        double den = 0.0;
        for (std::ptrdiff_t w = -static_cast<std::ptrdiff_t>(W);
             w <= static_cast<std::ptrdiff_t>(W); ++w) {
            if (w == 0) continue;
            const std::size_t node =
                static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) + w);
            const double dx = static_cast<double>(w) * h;
            for (std::size_t j = 0; j < q; ++j) {
                if (group[j] != i) continue;
                num = add(num, scale(sub(sel.value(j, node), sig.support[i]), dx));
                den += dx * dx;
            }
        }
        slopes[i] = scale(num, 1.0 / den);
    }

    // Strong affine approximatability: the grouped candidate must approximate
    // f to first order. Quotients are recorded coarse to fine.
    auto grouped_candidate = [&](double dx) {
        std::vector<Vec> pts;
        pts.reserve(q);
        for (std::size_t i = 0; i < sig.J; ++i) {
            const Vec v = add(sig.support[i], scale(slopes[i], dx));
            for (std::size_t c = 0; c < sig.group_sizes[i]; ++c) pts.push_back(v);
        }
        return QPoint(std::move(pts));
    };
    std::vector<double> profile;
    for (std::size_t w = W; w >= 1; --w) {
        const double dx = static_cast<double>(w) * h;
        const double right =
            distance(f.samples[idx + w], grouped_candidate(dx)).g / dx;
        const double left =
            distance(f.samples[idx - w], grouped_candidate(-dx)).g / dx;
        profile.push_back(std::max(right, left));
    }
    if (profile.back() > strong_tol)
        throw not_differentiable(
            "not strongly affinely approximatable at x0: the grouped affine "
            "fit leaves a first-order residual of " +
            std::to_string(profile.back()));

    // Per-branch derivative = its group's slope; cross-check against the
    // symmetric difference quotient.
    std::vector<std::vector<Vec>> reordered(q);
    std::vector<Vec> derivs(q);
    std::vector<std::size_t> groups_out(q);
    for (std::size_t r = 0; r < q; ++r) {
        const std::size_t j = order[r];
        reordered[r] = sel.branches()[j];
        groups_out[r] = group[j];
        derivs[r] = slopes[group[j]];
        const Vec sym = scale(sub(sel.value(j, idx + 1), sel.value(j, idx - 1)),
                              1.0 / (2.0 * h));
        if (norm(sub(sym, derivs[r])) >
            strong_tol * std::max(1.0, norm(derivs[r])))
            throw not_differentiable(
                "branch difference quotients do not converge to the group "
                "slope at x0");
    }

    return DifferentiableSelection{Selection(f.a, f.b, std::move(reordered)),
                                   std::move(derivs), std::move(groups_out),
                                   std::move(slopes), std::move(profile)};
}

}  // namespace qspace

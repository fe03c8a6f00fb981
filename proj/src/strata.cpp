#include "qspace/strata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qspace/errors.hpp"

namespace qspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Signature signature(const QPoint& p, double tol) {
    if (tol < 0.0) throw error("grouping tolerance must be nonnegative");
    const std::size_t q = p.multiplicity();

    UnionFind uf(q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j)
            if (euclidean_distance(p.point(i), p.point(j)) <= tol)
                uf.unite(i, j);

    // Cluster ids in order of first occurrence; canonical storage makes that
    // lexicographic order of the clusters.
    std::vector<std::size_t> cluster_of(q);
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> root_to_cluster(q, q);
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t r = uf.find(i);
        if (root_to_cluster[r] == q) {
            root_to_cluster[r] = members.size();
            members.emplace_back();
        }
        cluster_of[i] = root_to_cluster[r];
        members[root_to_cluster[r]].push_back(i);
    }

    // Single linkage can chain; refuse to guess when a cluster's diameter
    // exceeds what the tolerance promises.
    for (const auto& m : members)
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b)
                if (euclidean_distance(p.point(m[a]), p.point(m[b])) > 2.0 * tol)
                    throw ambiguity_error(
                        "grouping is ambiguous: tolerance chaining merged points "
                        "farther apart than 2*tol");

    Signature sig;
    sig.J = members.size();
    sig.group_of_point = std::move(cluster_of);
    sig.support.resize(sig.J);
    sig.group_sizes.resize(sig.J);
    for (std::size_t c = 0; c < sig.J; ++c) {
        sig.group_sizes[c] = members[c].size();
        if (tol == 0.0) {
            sig.support[c] = p.point(members[c].front());
        } else {
            Vec centroid(p.dimension(), 0.0);
            for (std::size_t idx : members[c])
                centroid = add(centroid, p.point(idx));
            sig.support[c] = scale(centroid, 1.0 / static_cast<double>(members[c].size()));
        }
    }
    sig.multiplicities = sig.group_sizes;
    std::sort(sig.multiplicities.begin(), sig.multiplicities.end());
    return sig;
}

std::vector<PermissibleDecomposition> enumerate_decompositions(std::size_t q) {
    if (q < 1) throw error("decompositions are defined for Q >= 1");
    std::vector<PermissibleDecomposition> out;
    std::vector<std::size_t> parts;
    // Ascending parts emitted recursively in lexicographic order.
    auto rec = [&](auto&& self, std::size_t remaining, std::size_t min_part) -> void {
        if (remaining == 0) {
            out.push_back({parts.size(), parts});
            return;
        }
        for (std::size_t k = min_part; k <= remaining; ++k) {
            parts.push_back(k);
            self(self, remaining - k, k);
            parts.pop_back();
        }
    };
    rec(rec, q, 1);
    return out;
}

double min_support_separation(const Signature& sig) {
    if (sig.J < 2) return kInf;
    double best = kInf;
    for (std::size_t i = 0; i < sig.J; ++i)
        for (std::size_t j = i + 1; j < sig.J; ++j)
            best = std::min(best, euclidean_distance(sig.support[i], sig.support[j]));
    return best;
}

double stratum_radius(const QPoint& p) {
    return 0.5 * min_support_separation(signature(p, 0.0));
}

StratumPathReport stratum_local_geodesic_check(const QPoint& a, const QPoint& b,
                                               std::size_t samples) {
    if (samples < 2) throw error("need at least two samples");
    if (a.multiplicity() != b.multiplicity() || a.dimension() != b.dimension())
        throw dimension_mismatch("incompatible endpoints");
    const Signature sa = signature(a, 0.0);
    const Signature sb = signature(b, 0.0);
    if (!sa.same_decomposition(sb))
        throw precondition_error("endpoints lie in different strata");

    const double delta = 0.5 * min_support_separation(sa);
    const double bound = delta / std::pow(4.0, static_cast<double>(a.multiplicity()));
    if (sa.J > 1) {
        // Match supports of b to nearest supports of a; the bound makes the
        // assignment unambiguous when it holds at all.
        std::vector<char> used(sa.J, 0);
        for (std::size_t i = 0; i < sa.J; ++i) {
            std::size_t nearest = sa.J;
            double nd = kInf;
            for (std::size_t j = 0; j < sb.J; ++j) {
                const double d = euclidean_distance(sa.support[i], sb.support[j]);
                if (d < nd) {
                    nd = d;
                    nearest = j;
                }
            }
            if (!(nd < bound) || used[nearest] ||
                sa.group_sizes[i] != sb.group_sizes[nearest])
                throw precondition_error(
                    "supports of b are not within delta/4^Q of a's supports "
                    "group-for-group");
            used[nearest] = 1;
        }
    }

    StratumPathReport report{geodesic(a, b), true, samples};
    for (std::size_t k = 0; k < samples; ++k) {
        const double t =
            static_cast<double>(k) / static_cast<double>(samples - 1);
        if (!signature(report.path.eval(t), 0.0).same_decomposition(sa)) {
            report.stays = false;
            break;
        }
    }
    return report;
}

std::vector<QPoint> connect_in_top_stratum(const QPoint& a, const QPoint& b,
                                           std::size_t samples) {
    if (samples < 2) throw error("need at least two samples");
    if (signature(a, 0.0).J != a.multiplicity() ||
        signature(b, 0.0).J != b.multiplicity())
        throw precondition_error("endpoints must have Q distinct points");
    if (a.multiplicity() != b.multiplicity() || a.dimension() != b.dimension())
        throw dimension_mismatch("incompatible endpoints");

    // Canonical storage is the lexicographic sort, so pairing slot i with
    // slot i matches in lexicographic order; those interpolants never meet.
    std::vector<QPoint> path;
    path.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t =
            static_cast<double>(k) / static_cast<double>(samples - 1);
        std::vector<Vec> pts(a.multiplicity());
        for (std::size_t i = 0; i < pts.size(); ++i)
            pts[i] = lerp(a.point(i), b.point(i), t);
        QPoint sample(std::move(pts));
        if (signature(sample, 0.0).J != a.multiplicity())
            throw error("sample left the top stratum");
        path.push_back(std::move(sample));
    }
    return path;
}

LocalChart::LocalChart(QPoint center, double radius)
    : center_(std::move(center)), radius_(radius),
      center_image_(lex_embedding(center_)) {}

Vec LocalChart::forward(const QPoint& b) const {
    const DistanceResult d = distance(center_, b);
    if (!(d.g < radius_))
        throw precondition_error("query point outside chart radius");
    Vec x;
    x.reserve(center_image_.size());
    for (std::size_t i = 0; i < center_.multiplicity(); ++i) {
        const Vec& p = b.point(d.witness.sigma[i]);
        x.insert(x.end(), p.begin(), p.end());
    }
    return x;
}

QPoint LocalChart::backward(const Vec& x) const {
    if (x.size() != center_image_.size())
        throw dimension_mismatch("chart coordinate has wrong length");
    if (!(euclidean_distance(x, center_image_) < radius_))
        throw precondition_error("coordinate outside chart ball");
    const std::size_t n = center_.dimension();
    std::vector<Vec> pts(center_.multiplicity());
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = Vec(x.begin() + static_cast<std::ptrdiff_t>(i * n),
                     x.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    return QPoint(std::move(pts));
}

LocalChart local_chart(const QPoint& a) {
    if (signature(a, 0.0).J != a.multiplicity())
        throw precondition_error("charts exist around points with Q distinct "
                                 "components only");
    return LocalChart(a, 0.5 * stratum_radius(a));
}

Vec lex_embedding(const QPoint& p) {
    Vec x;
    x.reserve(p.multiplicity() * p.dimension());
    for (std::size_t i = 0; i < p.multiplicity(); ++i)
        x.insert(x.end(), p.point(i).begin(), p.point(i).end());
    return x;
}

}  // namespace qspace

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qspace {

// A point (or velocity) in R^n.
using Vec = std::vector<double>;

// Compensated accumulator. Squared-cost sums feed inequality checks with
// 1e-9 slack budgets, so rounding must stay at a few ulps regardless of
// term count.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double squared_norm(const Vec& a) {
    KahanSum s;
    for (double x : a) s.add(x * x);
    return s.value();
}

inline double norm(const Vec& a) { return std::sqrt(squared_norm(a)); }

inline double squared_distance(const Vec& a, const Vec& b) {
    KahanSum s;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s.add(d * d);
    }
    return s.value();
}

inline double euclidean_distance(const Vec& a, const Vec& b) {
    return std::sqrt(squared_distance(a, b));
}

inline double dot(const Vec& a, const Vec& b) {
    KahanSum s;
    for (std::size_t k = 0; k < a.size(); ++k) s.add(a[k] * b[k]);
    return s.value();
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

inline Vec scale(const Vec& a, double lambda) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = lambda * a[k];
    return r;
}

// (1-t)*a + t*b, the segment parameterization used by every geodesic here.
inline Vec lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = (1.0 - t) * a[k] + t * b[k];
    return r;
}

// Exact lexicographic order on coordinates; no epsilon, so that the induced
// multiset equality is an equivalence relation.
inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
        if (a[k] < b[k]) return true;
        if (a[k] > b[k]) return false;
    }
    return a.size() < b.size();
}

inline bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace qspace

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qspace/qpoint.hpp"

namespace qspace {

// mt19937_64 behind an explicit uniform mapping. std::uniform_real_distribution
// is implementation-defined, which would break byte-identical verify reports
// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n)
    std::uint64_t index(std::uint64_t n) { return eng_() % n; }

    Vec vec(std::size_t n, double lo, double hi) {
        Vec v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

inline QPoint random_qpoint(Rng& rng, std::size_t q, std::size_t n,
                            double lo = -1.0, double hi = 1.0) {
    std::vector<Vec> pts(q);
    for (Vec& p : pts) p = rng.vec(n, lo, hi);
    return QPoint(std::move(pts));
}

}  // namespace qspace

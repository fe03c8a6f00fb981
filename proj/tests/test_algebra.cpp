#include <cmath>
#include <limits>

#include "doctest.h"

#include "qspace/algebra.hpp"
#include "qspace/errors.hpp"
#include "qspace/random.hpp"

using namespace qspace;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// f = [[x]] + [[-1]], g = [[1-x]] + [[-1]] on [0, 1]: two Dirichlet
// minimizers whose tensor sum develops a branch crossing.
BranchedCurve make_f(std::size_t samples = 101) {
    return BranchedCurve::sample(0.0, 1.0, samples,
                                 {[](double x) { return Vec{x}; },
                                  [](double) { return Vec{-1.0}; }});
}

BranchedCurve make_g(std::size_t samples = 101) {
    return BranchedCurve::sample(0.0, 1.0, samples,
                                 {[](double x) { return Vec{1.0 - x}; },
                                  [](double) { return Vec{-1.0}; }});
}

BranchedCurve random_polyline(Rng& rng, std::size_t branches, std::size_t n,
                              std::size_t samples) {
    std::vector<std::vector<Vec>> data(branches);
    for (auto& br : data) {
        br.reserve(samples);
        for (std::size_t k = 0; k < samples; ++k)
            br.push_back(rng.vec(n, -1.0, 1.0));
    }
    return BranchedCurve(0.0, 1.0, std::move(data));
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("curve construction validates its grid") {
    CHECK_THROWS_AS(BranchedCurve(1.0, 0.0, {{{0.0}}}), error);
    CHECK_THROWS_AS(BranchedCurve(0.0, 1.0, {}), error);
    CHECK_THROWS_AS(BranchedCurve(0.0, 1.0, {{{0.0}, {1.0}}, {{0.0}}}), error);
    CHECK_THROWS_AS(
        BranchedCurve(0.0, 1.0, {{{0.0}, {std::numeric_limits<double>::quiet_NaN()}}}),
        error);
}

TEST_CASE("tensor sum of the worked pair") {
    const BranchedCurve fg = tensor_sum(make_f(), make_g());
    REQUIRE(fg.branch_count() == 4);
    for (std::size_t k = 0; k < fg.sample_count(); ++k) {
        const double x = fg.x(k);
        const QPoint expected({{1.0}, {x - 1.0}, {-x}, {-2.0}});
        CHECK(distance(fg.value_at(k), expected).g <= 1e-15);
    }
}

TEST_CASE("the worked tensor sum has a branch crossing at one half") {
    const BranchedCurve fg = tensor_sum(make_f(), make_g());
    // branch order (i, j): f_0+g_0 = 1, f_0+g_1 = x-1, f_1+g_0 = -x, f_1+g_1 = -2
    const auto diff = [&](std::size_t k) {
        return fg.value(1, k)[0] - fg.value(2, k)[0];  // (x-1) - (-x) = 2x - 1
    };
    CHECK(diff(0) < 0.0);
    CHECK(diff(fg.sample_count() - 1) > 0.0);
    CHECK(diff(50) == 0.0);  // sample at x = 1/2
}

TEST_CASE("tensor sum with the zero singleton is the identity") {
    Rng rng(3);
    const BranchedCurve f = random_polyline(rng, 3, 2, 33);
    const BranchedCurve zero =
        BranchedCurve(0.0, 1.0,
                      {std::vector<Vec>(33, Vec{0.0, 0.0})});
    const BranchedCurve fg = tensor_sum(f, zero);
    REQUIRE(fg.branch_count() == 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 33; ++k)
            CHECK(fg.value(j, k) == f.value(j, k));
}

TEST_CASE("tensor sum rejects mismatched grids") {
    Rng rng(5);
    const BranchedCurve f = random_polyline(rng, 2, 1, 10);
    const BranchedCurve g = random_polyline(rng, 2, 1, 11);
    CHECK_THROWS_AS(tensor_sum(f, g), dimension_mismatch);
}

TEST_CASE("eta is additive under the tensor sum") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const BranchedCurve f = random_polyline(rng, 1 + rng.index(3), 2, 21);
        const BranchedCurve g = random_polyline(rng, 1 + rng.index(3), 2, 21);
        const BranchedCurve fg = tensor_sum(f, g);
        const auto ef = eta_curve(f);
        const auto eg = eta_curve(g);
        const auto efg = eta_curve(fg);
        for (std::size_t k = 0; k < efg.size(); ++k)
            CHECK(euclidean_distance(efg[k], add(ef[k], eg[k])) <= 1e-13);
    }
}

TEST_CASE("Dirichlet energy of matched-linear interpolation") {
    // f_sigma(t) = sum [[(1-t) a_i + t b_i]] has energy sum |a_i - b_i|^2
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t q = 1 + rng.index(4);
        const std::size_t n = 1 + rng.index(3);
        std::vector<Vec> a(q), b(q);
        for (auto& v : a) v = rng.vec(n, -1.0, 1.0);
        for (auto& v : b) v = rng.vec(n, -1.0, 1.0);
        std::vector<std::function<Vec(double)>> branches;
        KahanSum expected;
        for (std::size_t i = 0; i < q; ++i) {
            branches.push_back([=](double t) { return lerp(a[i], b[i], t); });
            expected.add(squared_distance(a[i], b[i]));
        }
        const BranchedCurve f = BranchedCurve::sample(0.0, 1.0, 2 + rng.index(50),
                                                      branches);
        CHECK(dirichlet(f) == doctest::Approx(expected.value()).epsilon(1e-12));
    }
}

TEST_CASE("constant curves have zero energy") {
    const BranchedCurve f = BranchedCurve::sample(
        0.0, 1.0, 11, {[](double) { return Vec{3.0, -2.0}; }});
    CHECK(dirichlet(f) == 0.0);
}

TEST_CASE("energy needs at least one segment") {
    const BranchedCurve f(0.0, 1.0, {{{0.0}}});
    CHECK_THROWS_AS(dirichlet(f), precondition_error);
}

TEST_CASE("tensor-sum Dirichlet identity") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 1 + rng.index(3);
        const std::size_t q = 1 + rng.index(3);
        const std::size_t n = 1 + rng.index(2);
        const BranchedCurve f = random_polyline(rng, p, n, 41);
        const BranchedCurve g = random_polyline(rng, q, n, 41);
        const double lhs = dirichlet(tensor_sum(f, g));
        const double rhs = static_cast<double>(q) * dirichlet(f) +
                           static_cast<double>(p) * dirichlet(g) +
                           2.0 * static_cast<double>(p * q) * pairing_integral(f, g);
        CHECK(std::abs(lhs - rhs) <=
              1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
}

TEST_CASE("L^k norms") {
    SUBCASE("the zero curve has zero norm for every order") {
        const BranchedCurve z = BranchedCurve::sample(
            0.0, 1.0, 11, {[](double) { return Vec{0.0}; },
                           [](double) { return Vec{0.0}; }});
        for (double k : {0.5, 1.0, 2.0, kInf}) CHECK(lp_norm(z, k).value == 0.0);
    }
    SUBCASE("a constant singleton has norm |c| in L^2") {
        const BranchedCurve f = BranchedCurve::sample(
            0.0, 1.0, 51, {[](double) { return Vec{3.0, 4.0}; }});
        CHECK(lp_norm(f, 2.0).value == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("[[x]] + [[-x]] has L^2 norm sqrt(2/3)") {
        const BranchedCurve f = BranchedCurve::sample(
            0.0, 1.0, 2001, {[](double x) { return Vec{x}; },
                             [](double x) { return Vec{-x}; }});
        CHECK(std::abs(lp_norm(f, 2.0).value - std::sqrt(2.0 / 3.0)) <= 1e-6);
    }
    SUBCASE("the sup norm is the largest sample radius") {
        const BranchedCurve f = BranchedCurve::sample(
            0.0, 1.0, 101, {[](double x) { return Vec{x - 0.25}; }});
        CHECK(lp_norm(f, kInf).value == 0.75);
    }
    SUBCASE("nonpositive orders are rejected") {
        const BranchedCurve f = make_f();
        CHECK_THROWS_AS(lp_norm(f, 0.0), precondition_error);
        CHECK_THROWS_AS(lp_norm(f, -2.0), precondition_error);
    }
}

TEST_CASE("weighted triangle inequality") {
    SUBCASE("zero second factor gives equality with the q^(1/2) weight") {
        Rng rng(13);
        const BranchedCurve f = random_polyline(rng, 2, 2, 21);
        const BranchedCurve zeros =
            BranchedCurve(0.0, 1.0,
                          std::vector<std::vector<Vec>>(
                              3, std::vector<Vec>(21, Vec{0.0, 0.0})));
        for (std::size_t k = 0; k < 21; ++k) {
            const SlackReport r = weighted_triangle_check(f, zeros, k);
            CHECK(std::abs(r.slack) <= 1e-12);
        }
    }
    SUBCASE("random pairs have nonnegative slack") {
        Rng rng(15);
        for (int trial = 0; trial < 100; ++trial) {
            const BranchedCurve f = random_polyline(rng, 2, 2, 21);
            const BranchedCurve g = random_polyline(rng, 3, 2, 21);
            for (std::size_t k = 0; k < 21; ++k)
                CHECK(weighted_triangle_check(f, g, k).slack >= -1e-12);
        }
    }
    SUBCASE("aligned constants") {
        const BranchedCurve f = BranchedCurve::sample(
            0.0, 1.0, 5, {[](double) { return Vec{1.0, 1.0}; },
                          [](double) { return Vec{1.0, 1.0}; }});
        const BranchedCurve g = BranchedCurve::sample(
            0.0, 1.0, 5,
            {[](double) { return Vec{1.0, 1.0}; },
             [](double) { return Vec{1.0, 1.0}; },
             [](double) { return Vec{1.0, 1.0}; }});
        const SlackReport r = weighted_triangle_check(f, g, 2);
        // all branches aligned: LHS = sqrt(pq)*|2v|, RHS = 2 sqrt(pq)*|v|
        CHECK(r.lhs == doctest::Approx(std::sqrt(6.0) * 2.0 * std::sqrt(2.0))
                           .epsilon(1e-13));
        CHECK(std::abs(r.slack) <= 1e-12);
    }
}

TEST_CASE("weighted Minkowski inequality") {
    SUBCASE("k = 1 with a zero factor is an equality up to quadrature") {
        Rng rng(17);
        const BranchedCurve f = random_polyline(rng, 2, 1, 51);
        const BranchedCurve zeros = BranchedCurve(
            0.0, 1.0,
            std::vector<std::vector<Vec>>(3, std::vector<Vec>(51, Vec{0.0})));
        const SlackReport r = weighted_minkowski_check(f, zeros, 1.0);
        CHECK(std::abs(r.slack) <= 1e-12);
    }
    SUBCASE("random pairs across orders") {
        Rng rng(19);
        for (int trial = 0; trial < 60; ++trial) {
            const BranchedCurve f = random_polyline(rng, 1 + rng.index(3), 2, 31);
            const BranchedCurve g = random_polyline(rng, 1 + rng.index(3), 2, 31);
            for (double k : {0.5, 1.0, 2.0, 3.0, kInf})
                CHECK(weighted_minkowski_check(f, g, k).slack >= -1e-9);
        }
    }
    SUBCASE("invalid orders are rejected") {
        const BranchedCurve f = make_f();
        CHECK_THROWS_AS(weighted_minkowski_check(f, f, 0.0), precondition_error);
    }
}

}  // TEST_SUITE

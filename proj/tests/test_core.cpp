#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "doctest.h"

#include "qspace/errors.hpp"
#include "qspace/qpoint.hpp"
#include "qspace/random.hpp"

using namespace qspace;

namespace {

double pairing_cost(const QPoint& a, const QPoint& b,
                    const std::vector<std::size_t>& sigma) {
    KahanSum s;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        s.add(squared_distance(a.point(i), b.point(sigma[i])));
    return s.value();
}

const QPoint kA({{0.0, 1.0}, {0.0, 0.0}});
const QPoint kB({{0.0, 0.0}, {1.0, -0.5}});

}  // namespace

TEST_SUITE("core") {

TEST_CASE("canonical storage is lexicographic ascending") {
    const QPoint p({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(p.point(0) == Vec{0.0, 1.0});
    CHECK(p.point(1) == Vec{1.0, 0.0});
}

TEST_CASE("constant multisets are unchanged by canonicalization") {
    const QPoint p = QPoint::constant(4, {2.5, -1.0});
    for (std::size_t i = 0; i < 4; ++i) CHECK(p.point(i) == Vec{2.5, -1.0});
}

TEST_CASE("every input ordering yields one canonical form") {
    Rng rng(7);
    std::vector<Vec> pts(5);
    for (Vec& p : pts) p = rng.vec(3, -1.0, 1.0);
    const QPoint reference(pts);

    std::vector<std::size_t> order(5);
    std::iota(order.begin(), order.end(), 0);
    std::size_t checked = 0;
    std::sort(order.begin(), order.end());
    do {
        std::vector<Vec> shuffled;
        for (std::size_t i : order) shuffled.push_back(pts[i]);
        CHECK(QPoint(shuffled) == reference);
        ++checked;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(checked == 120);
}

TEST_CASE("canonicalize is idempotent") {
    Rng rng(11);
    std::vector<Vec> pts(6);
    for (Vec& p : pts) p = rng.vec(2, -5.0, 5.0);
    const auto once = canonicalize(pts);
    CHECK(canonicalize(once) == once);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(QPoint({}), error);
    CHECK_THROWS_AS(QPoint({{1.0, 2.0}, {1.0}}), error);
    CHECK_THROWS_AS(QPoint(std::vector<Vec>{{std::numeric_limits<double>::quiet_NaN()}}), error);
    CHECK_THROWS_AS(QPoint(std::vector<Vec>{{std::numeric_limits<double>::infinity(), 0.0}}), error);
    CHECK_THROWS_AS(QPoint::constant(0, {1.0}), error);
}

TEST_CASE("worked plane example has squared distance 9/4") {
    const DistanceResult d = distance(kA, kB);
    CHECK(d.g_squared == 2.25);
    CHECK(d.g == std::sqrt(2.25));
    CHECK(d.witness.squared_cost == d.g_squared);
    CHECK(pairing_cost(kA, kB, d.witness.sigma) == doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("distance to itself is zero with the identity witness") {
    const QPoint p({{0.5, 2.0}, {-1.0, 3.0}, {4.0, 4.0}});
    const DistanceResult d = distance(p, p);
    CHECK(d.g_squared == 0.0);
    CHECK(d.witness.sigma == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("brute force walks both pairings of the worked example") {
    const DistanceResult d = distance_bruteforce(kA, kB);
    CHECK(d.g_squared == 2.25);
    CHECK(pairing_cost(kA, kB, {0, 1}) + pairing_cost(kA, kB, {1, 0}) ==
          doctest::Approx(2.25 + 3.25).epsilon(1e-15));
}

TEST_CASE("brute force with Q = 1 is the squared component distance") {
    const QPoint a({{1.0, 2.0}});
    const QPoint b({{4.0, 6.0}});
    CHECK(distance_bruteforce(a, b).g_squared == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("brute force enforces the cap") {
    Rng rng(3);
    const QPoint a = random_qpoint(rng, 9, 2);
    const QPoint b = random_qpoint(rng, 9, 2);
    CHECK_THROWS_AS(distance_bruteforce(a, b), precondition_error);
    CHECK_NOTHROW(distance_bruteforce(a, b, 9));
}

TEST_CASE("assignment solve equals brute force for a random Q = 6 pair") {
    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const QPoint a = random_qpoint(rng, 6, 3);
        const QPoint b = random_qpoint(rng, 6, 3);
        const double hung = distance(a, b).g_squared;
        const double brute = distance_bruteforce(a, b).g_squared;
        CHECK(std::abs(hung - brute) <= 1e-12 * std::max(1.0, brute));
    }
}

TEST_CASE("assignment solve equals brute force for every Q up to 7") {
    Rng rng(23);
    for (std::size_t q = 2; q <= 7; ++q) {
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 1 + rng.index(3);
            const QPoint a = random_qpoint(rng, q, n);
            const QPoint b = random_qpoint(rng, q, n);
            const double hung = distance(a, b).g_squared;
            const double brute = distance_bruteforce(a, b).g_squared;
            CHECK(std::abs(hung - brute) <= 1e-12 * std::max(1.0, brute));
        }
    }
}

TEST_CASE("sorted matching on the line") {
    SUBCASE("equal multisets have distance zero") {
        const QPoint a({{1.0}, {2.0}});
        const QPoint b({{2.0}, {1.0}});
        CHECK(sorted_matching_distance_1d(a, b).g_squared == 0.0);
    }
    SUBCASE("0,1 against 10,0 matches in order of height") {
        const QPoint a({{0.0}, {1.0}});
        const QPoint b({{10.0}, {0.0}});
        CHECK(sorted_matching_distance_1d(a, b).g_squared == 81.0);
    }
    SUBCASE("equals the exhaustive optimum on random pairs") {
        Rng rng(31);
        for (int trial = 0; trial < 1000; ++trial) {
            const QPoint a = random_qpoint(rng, 7, 1);
            const QPoint b = random_qpoint(rng, 7, 1);
            const double srt = sorted_matching_distance_1d(a, b).g_squared;
            const double brute = distance_bruteforce(a, b).g_squared;
            CHECK(std::abs(srt - brute) <= 1e-12 * std::max(1.0, brute));
        }
    }
    SUBCASE("rejects higher dimensions") {
        const QPoint a(std::vector<Vec>{{0.0, 0.0}});
        CHECK_THROWS_AS(sorted_matching_distance_1d(a, a), dimension_mismatch);
    }
}

TEST_CASE("eta is the arithmetic mean") {
    CHECK(eta(QPoint::constant(2, {0.0, 1.0})) == Vec{0.0, 1.0});
    CHECK(eta(QPoint({{1.0}, {-1.0}})) == Vec{0.0});
    CHECK(eta(QPoint({{0.0, 1.0}, {0.0, 0.0}})) == Vec{0.0, 0.5});
}

TEST_CASE("metric axioms hold on random triples") {
    Rng rng(41);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t q = 1 + rng.index(5);
        const std::size_t n = 1 + rng.index(3);
        const QPoint a = random_qpoint(rng, q, n);
        const QPoint b = random_qpoint(rng, q, n);
        const QPoint c = random_qpoint(rng, q, n);

        const DistanceResult ab = distance(a, b);
        REQUIRE(ab.g >= 0.0);
        REQUIRE(ab.g_squared == distance(b, a).g_squared);  // exact symmetry
        REQUIRE(distance(a, QPoint(a.points())).g == 0.0);
        const double slack = ab.g + distance(b, c).g - distance(a, c).g;
        REQUIRE(slack >= -1e-9);
    }
}

TEST_CASE("identity of indiscernibles up to canonicalization") {
    const QPoint a({{3.0}, {1.0}, {2.0}});
    const QPoint b({{2.0}, {3.0}, {1.0}});
    CHECK(a == b);
    CHECK(distance(a, b).g == 0.0);
    const QPoint c({{1.0}, {1.0}, {2.0}});
    CHECK(distance(a, c).g > 0.0);
}

TEST_CASE("eta contracts by the square root of the multiplicity") {
    Rng rng(43);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t q = 1 + rng.index(5);
        const std::size_t n = 1 + rng.index(3);
        const QPoint s = random_qpoint(rng, q, n);
        const QPoint t = random_qpoint(rng, q, n);
        const double lhs = euclidean_distance(eta(s), eta(t));
        const double rhs = distance(s, t).g / std::sqrt(static_cast<double>(q));
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("incompatible operands are rejected") {
    const QPoint a({{0.0}, {1.0}});
    const QPoint b(std::vector<Vec>{{0.0}});
    CHECK_THROWS_AS(distance(a, b), dimension_mismatch);
    const QPoint c({{0.0, 0.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(distance(a, c), dimension_mismatch);
}

}  // TEST_SUITE

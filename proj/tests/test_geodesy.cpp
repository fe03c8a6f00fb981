#include <cmath>

#include "doctest.h"

#include "qspace/errors.hpp"
#include "qspace/geodesic.hpp"
#include "qspace/random.hpp"

using namespace qspace;

namespace {

const QPoint kA({{0.0, 1.0}, {0.0, 0.0}});
const QPoint kB({{0.0, 0.0}, {1.0, -0.5}});
const QPoint kC({{0.0, 0.0}, {-1.0, -1.0}});

}  // namespace

TEST_SUITE("geodesy") {

TEST_CASE("worked example geodesic interpolates matched components") {
    const Geodesic gam = geodesic(kA, kB);
    CHECK(gam.length() == std::sqrt(2.25));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const QPoint expected({{0.0, 1.0 - t}, {t, -t / 2.0}});
        CHECK(gam.eval(t) == expected);
    }
    CHECK(gam.eval(0.0) == kA);
    CHECK(gam.eval(1.0) == kB);
}

TEST_CASE("geodesic from a point to itself is constant") {
    const Geodesic gam = geodesic(kA, kA);
    CHECK(gam.length() == 0.0);
    for (double t : {0.0, 0.3, 1.0}) CHECK(gam.eval(t) == kA);
}

TEST_CASE("non-unique geodesics: the returned one matches a known optimum") {
    const QPoint a({{0.0, 1.0}, {0.0, -1.0}});
    const QPoint b({{-1.0, 0.0}, {1.0, 0.0}});
    const Geodesic got = geodesic(a, b);
    CHECK(got.length() == 2.0);

    auto explicit_geodesic = [&](std::vector<std::size_t> sigma) {
        KahanSum s;
        for (std::size_t i = 0; i < 2; ++i)
            s.add(squared_distance(a.point(i), b.point(sigma[i])));
        return Geodesic(a, b, Matching{std::move(sigma), s.value()});
    };
    const Geodesic g1 = explicit_geodesic({0, 1});
    const Geodesic g2 = explicit_geodesic({1, 0});
    CHECK(g1.length() == 2.0);
    CHECK(g2.length() == 2.0);
    // both are constant-speed geodesics
    for (const Geodesic* g : {&g1, &g2})
        CHECK(distance(g->eval(0.25), g->eval(0.75)).g ==
              doctest::Approx(1.0).epsilon(1e-12));
    const double near1 = distance(got.eval(0.4), g1.eval(0.4)).g;
    const double near2 = distance(got.eval(0.4), g2.eval(0.4)).g;
    CHECK(std::min(near1, near2) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("geodesic evaluation rejects parameters outside the unit interval") {
    const Geodesic gam = geodesic(kA, kB);
    CHECK_THROWS_AS(gam.eval(-0.1), precondition_error);
    CHECK_THROWS_AS(gam.eval(1.1), precondition_error);
}

TEST_CASE("geodesics reject matchings that do not attain the distance") {
    // in canonical order the identity pairing of the worked example costs
    // 13/4 against the optimal 9/4
    KahanSum identity_cost;
    identity_cost.add(squared_distance(kA.point(0), kB.point(0)));
    identity_cost.add(squared_distance(kA.point(1), kB.point(1)));
    CHECK(identity_cost.value() == 3.25);
    CHECK_THROWS_AS(Geodesic(kA, kB, Matching{{0, 1}, identity_cost.value()}),
                    precondition_error);
    CHECK_THROWS_AS(Geodesic(kA, kB, Matching{{0, 0}, 0.0}), precondition_error);
    CHECK_THROWS_AS(Geodesic(kA, kB, Matching{{0}, 0.0}), dimension_mismatch);
}

TEST_CASE("1-D geodesics match components in order of height") {
    const QPoint a({{0.0}, {1.0}});
    const QPoint b({{2.0}, {3.0}});
    CHECK(geodesic_1d(a, b).eval(0.5) == QPoint({{1.0}, {2.0}}));

    const Geodesic same = geodesic_1d(a, a);
    CHECK(same.eval(0.7) == a);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const QPoint x = random_qpoint(rng, 4, 1);
        const QPoint y = random_qpoint(rng, 4, 1);
        const Geodesic g1 = geodesic_1d(x, y);
        const Geodesic g2 = geodesic(x, y);
        for (double t : {0.2, 0.5, 0.9})
            CHECK(distance(g1.eval(t), g2.eval(t)).g <= 1e-12);
    }
}

TEST_CASE("comparison inequality on the worked example") {
    const ComparisonReport at_third = pc_comparison(kA, kB, kC, 1.0 / 3.0);
    CHECK(at_third.lhs == doctest::Approx(9.0 / 36.0 - 1.0 / 3.0 + 3.0).epsilon(1e-14));
    CHECK(at_third.rhs == doctest::Approx(9.0 / 36.0 - 2.0 / 3.0 + 3.0).epsilon(1e-14));
    CHECK(at_third.slack == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    CHECK(pc_comparison(kA, kB, kC, 0.0).slack == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(pc_comparison(kA, kB, kC, 1.0).slack == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(pc_comparison(kA, kB, kC, 1.5), precondition_error);
}

TEST_CASE("comparison slack is nonnegative on random triples") {
    Rng rng(17);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        const ComparisonReport r =
            pc_comparison(random_qpoint(rng, q, n), random_qpoint(rng, q, n),
                          random_qpoint(rng, q, n), rng.uniform());
        CHECK(r.slack >= -1e-9);
    }
}

TEST_CASE("comparison slack is nonnegative for every optimal matching") {
    Rng rng(18);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const ComparisonReport r = pc_comparison_all_optimal(
            random_qpoint(rng, q, 2), random_qpoint(rng, q, 2),
            random_qpoint(rng, q, 2), rng.uniform());
        CHECK(r.slack >= -1e-9);
    }
}

TEST_CASE("the line is flat") {
    SUBCASE("random triples") {
        Rng rng(19);
        for (int trial = 0; trial < 10000; ++trial) {
            const std::size_t q = 2 + rng.index(3);
            const ComparisonReport r = flatness_check_1d(
                random_qpoint(rng, q, 1), random_qpoint(rng, q, 1),
                random_qpoint(rng, q, 1), rng.uniform());
            CHECK(std::abs(r.slack) <= 1e-9);
        }
    }
    SUBCASE("endpoints give exact equality") {
        Rng rng(20);
        const QPoint a = random_qpoint(rng, 3, 1);
        const QPoint b = random_qpoint(rng, 3, 1);
        const QPoint c = random_qpoint(rng, 3, 1);
        CHECK(std::abs(flatness_check_1d(a, b, c, 0.0).slack) <= 1e-15);
        CHECK(std::abs(flatness_check_1d(a, b, c, 1.0).slack) <= 1e-15);
    }
    SUBCASE("a triple with repeated values") {
        const QPoint a({{1.0}, {2.0}, {2.0}});
        const QPoint b({{2.0}, {1.0}, {1.0}});
        const QPoint c({{0.0}, {0.0}, {3.0}});
        CHECK(std::abs(flatness_check_1d(a, b, c, 0.5).slack) <= 1e-9);
    }
    SUBCASE("rejects higher dimension") {
        CHECK_THROWS_AS(flatness_check_1d(kA, kB, kC, 0.5), dimension_mismatch);
    }
}

TEST_CASE("matching persistence on the line") {
    Rng rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t q = 2 + rng.index(4);
        const QPoint a = random_qpoint(rng, q, 1);
        const QPoint b = random_qpoint(rng, q, 1);
        const QPoint c = random_qpoint(rng, q, 1);
        const Matching wac = distance_bruteforce(a, c).witness;
        KahanSum through;
        for (std::size_t i = 0; i < q; ++i)
            through.add(squared_distance(b.point(i), c.point(wac.sigma[i])));
        const double direct = distance_bruteforce(b, c).g_squared;
        CHECK(std::abs(through.value() - direct) <= 1e-12 * std::max(1.0, direct));
    }
}

TEST_CASE("restriction of a geodesic is a geodesic of proportional length") {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        const Geodesic gam = geodesic(random_qpoint(rng, q, n), random_qpoint(rng, q, n));
        const double s = rng.uniform(0.0, 0.5);
        const double t = rng.uniform(s + 1e-6, 1.0);
        const double expected = (t - s) * gam.length();
        CHECK(distance(gam.eval(s), gam.eval(t)).g ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(geodesic(gam.eval(s), gam.eval(t)).length() ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("comparison cosine") {
    SUBCASE("worked example value 2/(3 sqrt 3)") {
        CHECK(alpha(kA, kB, kC) ==
              doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
    }
    SUBCASE("coincident far points give cosine one") {
        CHECK(alpha(kA, kB, kB) == 1.0);
    }
    SUBCASE("antipodal directions on the line give cosine minus one") {
        const QPoint a(std::vector<Vec>{{0.0}});
        const QPoint b(std::vector<Vec>{{1.0}});
        const QPoint c(std::vector<Vec>{{-1.0}});
        CHECK(alpha(a, b, c) == -1.0);
    }
    SUBCASE("degenerate arguments are rejected") {
        CHECK_THROWS_AS(alpha(kA, kA, kC), precondition_error);
        CHECK_THROWS_AS(alpha(kA, kB, kA), precondition_error);
    }
}

TEST_CASE("angles between geodesics") {
    SUBCASE("a geodesic makes angle zero with itself") {
        const Geodesic gam = geodesic(kA, kB);
        CHECK(angle(gam, gam) == doctest::Approx(0.0).epsilon(1e-7));
    }
    SUBCASE("single points reduce to the Euclidean angle") {
        const QPoint o(std::vector<Vec>{{0.0, 0.0}});
        const Geodesic g1 = geodesic(o, QPoint(std::vector<Vec>{{1.0, 0.0}}));
        const Geodesic g2 = geodesic(o, QPoint(std::vector<Vec>{{0.0, 1.0}}));
        CHECK(angle(g1, g2) == doctest::Approx(std::acos(0.0)).epsilon(1e-12));
    }
    SUBCASE("orthogonal splitting directions at a double point") {
        const QPoint base = QPoint::constant(2, {0.0, 0.0});
        const Geodesic g1 = geodesic(base, QPoint({{1.0, 0.0}, {-1.0, 0.0}}));
        const Geodesic g2 = geodesic(base, QPoint({{0.0, 1.0}, {0.0, -1.0}}));
        const AngleReport rep = angle_report(g1, g2);
        CHECK(rep.angle == doctest::Approx(std::acos(0.0)).epsilon(1e-12));
        for (std::size_t k = 1; k < rep.alphas.size(); ++k)
            CHECK(rep.alphas[k] <= rep.alphas[k - 1] + 1e-12);
    }
    SUBCASE("schedule alphas shrink monotonically on random pairs") {
        Rng rng(29);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t q = 2 + rng.index(2);
            const QPoint base = random_qpoint(rng, q, 2);
            const Geodesic g1 = geodesic(base, random_qpoint(rng, q, 2));
            const Geodesic g2 = geodesic(base, random_qpoint(rng, q, 2));
            const AngleReport rep = angle_report(g1, g2);
            CHECK(rep.angle >= 0.0);
            CHECK(rep.angle <= std::acos(-1.0));
            for (std::size_t k = 1; k < rep.alphas.size(); ++k)
                CHECK(rep.alphas[k] <= rep.alphas[k - 1] + 1e-12);
        }
    }
    SUBCASE("mismatched bases and zero-length geodesics are rejected") {
        const Geodesic g1 = geodesic(kA, kB);
        const Geodesic g2 = geodesic(kB, kC);
        CHECK_THROWS_AS(angle(g1, g2), precondition_error);
        const Geodesic zero = geodesic(kA, kA);
        CHECK_THROWS_AS(angle(g1, zero), precondition_error);
    }
}

TEST_CASE("constant speed along sampled parameters") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        const Geodesic gam = geodesic(random_qpoint(rng, q, n), random_qpoint(rng, q, n));
        const double s = rng.uniform();
        const double t = rng.uniform();
        const double lo = std::min(s, t);
        const double hi = std::max(s, t);
        CHECK(distance(gam.eval(lo), gam.eval(hi)).g ==
              doctest::Approx((hi - lo) * gam.length()).epsilon(1e-12));
    }
}

}  // TEST_SUITE

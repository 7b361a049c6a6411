#include <cmath>
#include <cstdint>
#include <random>

#include "doctest.h"
#include "fracalc/error.hpp"
#include "fracalc/fractal_sets.hpp"
#include "fracalc/mass.hpp"

using namespace fracalc;

namespace {

// Smallest Cantor point >= p/q for 0 <= p/q <= 1 with q not a multiple of 3, by long division in base 3.
double next_cantor_point(std::int64_t p, std::int64_t q) {
    double T = 0.0, w = 1.0;
    std::int64_t r = p;
    for (int k = 1; k <= 60; ++k) {
        r *= 3;
        std::int64_t d = r / q;
        r -= d * q;
        w /= 3.0;
        if (d == 1) return T + 2.0 * w;
        T += d * w;
    }
    return static_cast<double>(p) / static_cast<double>(q);
}

}  // namespace

TEST_CASE("intersects on the Cantor set") {
    auto C = SetSpec::cantor();
    CHECK_FALSE(C.intersects({0.4, 0.6}));
    CHECK(C.intersects({0.0, 1.0}));
    CHECK(C.intersects({1.0 / 3.0, 2.0 / 3.0}));
    CHECK(C.intersects({1.0 / 3.0, 1.0 / 3.0}));
    CHECK_FALSE(C.intersects({0.34, 0.66}));
    CHECK_FALSE(C.intersects({1.5, 2.0}));
    CHECK(C.intersects({-1.0, 0.0}));
}

TEST_CASE("intersects agrees with a digit oracle on random intervals") {
    auto C = SetSpec::cantor();
    std::mt19937_64 rng(7);
    const std::int64_t q = 100000;
    std::uniform_int_distribution<std::int64_t> pick(0, q);
    std::uniform_int_distribution<std::int64_t> width(0, 300);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t p = pick(rng);
        if (p % 3 == 0 && p != 0) ++p;
        std::int64_t w = width(rng);
        double lo = static_cast<double>(p) / q;
        double hi = std::min(1.0, static_cast<double>(p + w) / q);
        double nxt = next_cantor_point(p, q);
        bool expect = nxt <= hi + 1e-15;
        // skip numerically ambiguous cases within rounding of an endpoint
        if (std::abs(nxt - hi) < 1e-12) continue;
        CHECK(C.intersects({lo, hi}) == expect);
        auto f = C.first_at_or_after(lo);
        REQUIRE(f.has_value());
        CHECK(*f == doctest::Approx(nxt).epsilon(1e-12));
    }
}

TEST_CASE("gaps examples") {
    auto C = SetSpec::cantor();
    auto g = C.gaps({0.0, 1.0}, 0.2);
    REQUIRE(g.size() == 1);
    CHECK(g[0].lo == 1.0 / 3.0);
    CHECK(g[0].hi == 2.0 / 3.0);

    g = C.gaps({0.0, 1.0}, 0.1);
    REQUIRE(g.size() == 3);
    CHECK(g[0].lo == 1.0 / 9.0);
    CHECK(g[0].hi == 2.0 / 9.0);
    CHECK(g[1].lo == 1.0 / 3.0);
    CHECK(g[2].lo == 7.0 / 9.0);
    CHECK(g[2].hi == 8.0 / 9.0);

    auto P = SetSpec::finite({0.0, 1.0});
    g = P.gaps({0.0, 1.0}, 0.0);
    REQUIRE(g.size() == 1);
    CHECK(g[0].lo == 0.0);
    CHECK(g[0].hi == 1.0);

    // leading and trailing stretches of I outside F
    g = C.gaps({0.5, 0.8}, 0.02);
    REQUIRE(g.size() == 3);
    CHECK(g[0].lo == 0.5);
    CHECK(g[0].hi == 2.0 / 3.0);
    CHECK(g[1].lo == 19.0 / 27.0);
    CHECK(g[2].lo == 7.0 / 9.0);
    CHECK(g[2].hi == 0.8);
}

TEST_CASE("net examples") {
    auto C = SetSpec::cantor();
    auto n1 = C.net(1, {0.0, 1.0});
    REQUIRE(n1.size() == 4);
    CHECK(n1[1] == 1.0 / 3.0);
    CHECK(n1[2] == 2.0 / 3.0);
    auto n2 = C.net(2, {0.0, 1.0});
    std::vector<double> want{0.0, 1.0 / 9, 2.0 / 9, 1.0 / 3, 2.0 / 3, 7.0 / 9, 8.0 / 9, 1.0};
    CHECK(n2 == want);
    CHECK(C.net(5, {0.0, 1.0}).size() == 64);

    auto P = SetSpec::finite({0.1, 0.2, 0.7});
    CHECK(P.net(3, {0.15, 1.0}) == std::vector<double>{0.2, 0.7});

    auto K = SetSpec::harmonic();
    auto nk = K.net(3, {0.0, 1.0});
    std::vector<double> wk{0.0, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0};
    CHECK(nk == wk);

    auto G = SetSpec::gap_ifs({0.5, 0.25}, {0.0, 0.75});
    CHECK(G.net(1, {0.0, 1.0}) == std::vector<double>{0.0, 0.5, 0.75, 1.0});

    CHECK_THROWS_AS(C.net(1000, {0.0, 1.0}), Error);
}

TEST_CASE("net points are dense to resolution and lie in F") {
    std::vector<SetSpec> specs{SetSpec::cantor(), SetSpec::harmonic(),
                               SetSpec::gap_ifs({0.5, 0.25}, {0.0, 0.75}),
                               SetSpec::gap_ifs({0.2, 0.3, 0.2}, {0.0, 0.4, 0.8}),
                               SetSpec::cantor().scaled(2.0).translated(-0.5)};
    std::mt19937_64 rng(11);
    for (const auto& F : specs) {
        auto h = *F.hull();
        for (int level : {2, 5, 8}) {
            auto pts = F.net(level, h);
            REQUIRE(!pts.empty());
            for (double x : pts) CHECK(F.contains(x));
            for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
            // a random point of F is within resolution of the net
            std::uniform_real_distribution<double> U(h.lo, h.hi);
            for (int t = 0; t < 50; ++t) {
                auto y = F.first_at_or_after(U(rng));
                if (!y) continue;
                auto it = std::lower_bound(pts.begin(), pts.end(), *y);
                double d = 1e300;
                if (it != pts.end()) d = std::min(d, *it - *y);
                if (it != pts.begin()) d = std::min(d, *y - *(it - 1));
                CHECK(d <= F.resolution(level) * (1 + 1e-9) + 1e-15);
            }
        }
    }
}

TEST_CASE("gaps are disjoint, F-free and maximal") {
    std::vector<SetSpec> specs{SetSpec::cantor(), SetSpec::harmonic(),
                               SetSpec::gap_ifs({0.5, 0.25}, {0.0, 0.75}),
                               SetSpec::finite({0.1, 0.3, 0.35, 0.9}),
                               SetSpec::cantor().scaled(0.5).translated(0.25)};
    for (const auto& F : specs) {
        Interval I{0.05, 0.95};
        auto g = F.gaps(I, 1e-3);
        auto pts = F.net(6, I);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i].length() >= 1e-3);
            if (i) CHECK(g[i - 1].hi <= g[i].lo);
            double e = 1e-12;
            CHECK_FALSE(F.intersects({g[i].lo + e, g[i].hi - e}));
            for (double x : pts) CHECK_FALSE((x > g[i].lo && x < g[i].hi));
            // maximal: the ends are in F or are the ends of I
            CHECK((g[i].lo == I.lo || F.contains(g[i].lo)));
            CHECK((g[i].hi == I.hi || F.contains(g[i].hi)));
        }
    }
}

TEST_CASE("net nonempty implies intersects") {
    auto C = SetSpec::cantor();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        double a = U(rng), b = a + 0.05 * U(rng);
        for (int L : {0, 3, 7}) {
            if (!C.net(L, {a, b}).empty()) CHECK(C.intersects({a, b}));
        }
    }
}

TEST_CASE("translate and scale commute with queries") {
    auto C = SetSpec::cantor();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        double a = U(rng), b = a + 0.1 * std::abs(U(rng));
        double lam = 0.25;
        CHECK(C.translated(lam).intersects({a, b}) == C.intersects({a - lam, b - lam}));
        double s = 3.0;
        CHECK(C.scaled(s).intersects({a, b}) == C.intersects({a / s, b / s}));
    }
    auto Z = C.scaled(0.0);
    CHECK(Z.kind() == SetKind::finite);
    CHECK(Z.intersects({0.0, 0.0}));
    CHECK_FALSE(Z.intersects({0.1, 1.0}));
    CHECK(SetSpec::empty().scaled(0.0).is_empty());
    auto T = C.scaled(1.0 / 3.0).translated(2.0 / 3.0);
    CHECK(T.contains(2.0 / 3.0));
    CHECK(T.contains(1.0));
    CHECK_FALSE(T.contains(0.8));
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(SetSpec::gap_ifs({0.5}, {0.0}), Error);
    CHECK_THROWS_AS(SetSpec::gap_ifs({0.6, 0.6}, {0.0, 0.4}), Error);
    CHECK_THROWS_AS(SetSpec::gap_ifs({0.5, 1.2}, {0.0, 0.5}), Error);
    CHECK_THROWS_AS(SetSpec::finite({0.5, 0.5}), Error);
    CHECK_THROWS_AS(SetSpec::interval(1.0, 0.0), Error);
    CHECK_THROWS_AS(SetSpec::cantor().scaled(-1.0), Error);
}

TEST_CASE("similarity dimension") {
    CHECK(similarity_dimension({1.0 / 3, 1.0 / 3}) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-14));
    double s = similarity_dimension({0.5, 0.25});
    CHECK(std::pow(0.5, s) + std::pow(0.25, s) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("point of change on the Cantor staircase") {
    Staircase S(SetSpec::cantor(), std::log(2.0) / std::log(3.0));
    auto f = S.fn();
    CHECK_FALSE(is_point_of_change(f, 0.5, 1e-6));
    CHECK(is_point_of_change(f, 2.0 / 3.0, 1e-6));
    CHECK(is_point_of_change(f, 0.0, 1e-6));
    auto C = SetSpec::cantor();
    for (double x : C.net(3, {0.0, 1.0})) CHECK(is_point_of_change(f, x, 1e-6));
    for (const auto& g : C.gaps({0.0, 1.0}, 1e-3)) CHECK_FALSE(is_point_of_change(f, 0.5 * (g.lo + g.hi), 1e-6));
}

TEST_CASE("subdivision basics") {
    auto P = Subdivision::uniform(0.0, 1.0, 4);
    CHECK(P.components() == 4);
    CHECK(P.mesh() == doctest::Approx(0.25));
    auto Q = Subdivision::from({0.0, 0.125, 0.25, 0.5, 0.75, 1.0});
    CHECK(Q.refines(P));
    CHECK_FALSE(P.refines(Q));
    CHECK_THROWS_AS(Subdivision::from({0.0, 0.0}), Error);
}

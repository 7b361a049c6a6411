#include <cmath>
#include <random>

#include "doctest.h"
#include "fracalc/calculus.hpp"
#include "fracalc/cantor.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"
#include "oracles.hpp"

using namespace fracalc;
using doctest::Approx;

namespace {

const SetSpec C = SetSpec::cantor();
const Staircase S(C, oracle::kAlpha);

double S_of(double x) { return oracle::cantor_function_real(x) * oracle::kInvGamma; }

}  // namespace

TEST_CASE("sup and inf over F ∩ I") {
    auto chi = FOnF::indicator(C);
    auto id = FOnF::identity();
    auto [M, m] = sup_inf_on(chi, C, {0.0, 1.0}, 4);
    CHECK(M == 1.0);
    CHECK(m == 1.0);
    std::tie(M, m) = sup_inf_on(id, C, {0.0, 1.0}, 4);
    CHECK(M == 1.0);
    CHECK(m == 0.0);
    std::tie(M, m) = sup_inf_on(FOnF::constant(5.0), C, {0.4, 0.6}, 4);
    CHECK(M == 0.0);
    CHECK(m == 0.0);
    FOnF bare{[](double x) { return x; }, {}};
    CHECK_THROWS_AS(sup_inf_on(bare, C, {0.0, 1.0}, 4), Error);
    // padded Lipschitz bounds contain the true extremes of a bump on F
    FOnF bump{[](double x) { return -std::abs(x - 0.25); }, Lipschitz{1.0}};
    std::tie(M, m) = sup_inf_on(bump, C, {0.0, 1.0}, 3);
    CHECK(M >= 0.0);
    CHECK(m <= -0.75);
    double worst = 0.0;
    CHECK(check_lipschitz_hint(bump, C, {0.0, 1.0}, 6, &worst));
    CHECK(worst <= 1.0 + 1e-12);
    FOnF liar{[](double x) { return 10.0 * x; }, Lipschitz{1.0}};
    CHECK_FALSE(check_lipschitz_hint(liar, C, {0.0, 1.0}, 4));
}

TEST_CASE("upper and lower sums") {
    auto chi = FOnF::indicator(C);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> pts{0.0, 1.0};
        for (int i = 0; i < 12; ++i) pts.push_back(U(rng));
        std::sort(pts.begin(), pts.end());
        auto s = upper_lower_sums(chi, S, Subdivision::from(pts));
        CHECK(s.upper == s.lower);
        CHECK(s.upper == Approx(oracle::kInvGamma).epsilon(1e-14));
    }
    auto s = upper_lower_sums(FOnF::identity(), S, Subdivision::from({0.0, 1.0}));
    CHECK(s.upper == Approx(oracle::kInvGamma).epsilon(1e-14));
    CHECK(s.lower == 0.0);
    s = upper_lower_sums(FOnF::identity(), S, Subdivision::from({0.4, 0.5, 0.6}));
    CHECK(s.upper == 0.0);
    CHECK(s.lower == 0.0);
    // refining never widens the bracket
    auto f = FOnF::identity();
    auto coarse = upper_lower_sums(f, S, Subdivision::uniform(0.0, 1.0, 3));
    auto fine = upper_lower_sums(f, S, Subdivision::uniform(0.0, 1.0, 27));
    CHECK(fine.upper <= coarse.upper + 1e-15);
    CHECK(fine.lower >= coarse.lower - 1e-15);
    CHECK(fine.upper >= fine.lower);
}

TEST_CASE("integral examples") {
    auto r = integrate(FOnF::identity(), S, 0.0, 1.0, 1e-4);
    CHECK(r.lower <= oracle::kHalfInvGamma);
    CHECK(r.upper >= oracle::kHalfInvGamma);
    CHECK(r.gap <= 1e-4);
    CHECK(r.value == Approx(oracle::kHalfInvGamma).epsilon(1e-4));
    CHECK(r.trace.size() == static_cast<std::size_t>(r.refinement_depth) + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].upper <= r.trace[i - 1].upper + 1e-15);
        CHECK(r.trace[i].lower >= r.trace[i - 1].lower - 1e-15);
    }

    auto c = integrate(FOnF::indicator(C), S, 0.0, 1.0, 1e-4);
    CHECK(c.lower == c.upper);
    CHECK(c.value == Approx(oracle::kInvGamma).epsilon(1e-14));

    auto z = integrate(FOnF::identity(), S, 0.4, 0.6, 1e-4);
    CHECK(z.value == 0.0);
    CHECK(z.gap == 0.0);

    auto back = integrate(FOnF::identity(), S, 1.0, 0.0, 1e-4);
    CHECK(back.value == Approx(-r.value).epsilon(1e-15));
    CHECK(back.lower <= back.upper);

    FOnF bare{[](double x) { return x; }, {}};
    CHECK_THROWS_AS(integrate(bare, S, 0.0, 1.0), Error);
}

TEST_CASE("integral of x matches the series and a moment oracle") {
    for (double y : {1.0 / 9, 1.0 / 3, 0.4, 0.5, 2.0 / 3, 1.0}) {
        auto r = integrate(FOnF::identity(), S, 0.0, y, 1e-5);
        double want = oracle::cantor_moment(y, 1) * oracle::kInvGamma;
        CHECK(r.lower <= want + 1e-12);
        CHECK(r.upper >= want - 1e-12);
        // the series snaps y to the nearby triadic rational; the oracle integrates up to the double itself
        CHECK(g_series(y) == Approx(want).epsilon(1e-10).scale(1.0));
        CHECK(std::abs(r.value - g_series(y)) <= 1e-4);
    }
    // higher moments through a Lipschitz integrand
    FOnF sq{[](double x) { return x * x; }, Lipschitz{2.0}};
    auto r = integrate(sq, S, 0.0, 1.0, 1e-4);
    double want = oracle::cantor_moment(1.0, 2) * oracle::kInvGamma;
    CHECK(r.lower <= want);
    CHECK(r.upper >= want);
}

TEST_CASE("integral of powers of the staircase") {
    for (int n = 0; n <= 3; ++n) {
        auto r = integrate(FOnF::staircase_power(S, n), S, 0.0, 1.0, 1e-4);
        double want = std::pow(oracle::kInvGamma, n + 1) / (n + 1);
        CHECK(r.lower <= want + 1e-12);
        CHECK(r.upper >= want - 1e-12);
    }
}

TEST_CASE("linearity, additivity and order of the integral") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double tol = 1e-4;
    auto f = FOnF::identity();
    auto g = FOnF::staircase_power(S, 2);
    for (int t = 0; t < 8; ++t) {
        double x = U(rng), y = U(rng), z = U(rng);
        double a = std::min({x, y, z}), b = std::max({x, y, z}), c = x + y + z - a - b;
        double lam = 4.0 * U(rng) - 2.0;
        double lhs = integrate(f * lam + g, S, a, b, tol).value;
        double rhs = lam * integrate(f, S, a, b, tol).value + integrate(g, S, a, b, tol).value;
        CHECK(std::abs(lhs - rhs) <= (2 + std::abs(lam)) * tol);
        double whole = integrate(f, S, a, b, tol).value;
        double parts = integrate(f, S, a, c, tol).value + integrate(f, S, c, b, tol).value;
        CHECK(std::abs(whole - parts) <= 2 * tol);
        // x >= x^2 on [0,1]
        FOnF sq{[](double v) { return v * v; }, Monotone{1}};
        CHECK(integrate(f, S, a, b, tol).value >= integrate(sq, S, a, b, tol).value - 2 * tol);
    }
}

TEST_CASE("derivative examples") {
    auto pts = C.net(6, {0.0, 1.0});
    auto one = FOnF::staircase_power(S, 1);
    auto two = FOnF::staircase_power(S, 2);
    auto k = FOnF::constant(3.0);
    for (double x : pts) {
        auto d = derivative(one, S, x);
        CHECK(d.value == Approx(1.0).epsilon(1e-3).scale(1.0));
        CHECK(d.residual <= 1e-3);
        CHECK(derivative(k, S, x).value == 0.0);
        CHECK(derivative(two, S, x).value == Approx(2.0 * S_of(x)).epsilon(1e-3).scale(1.0));
    }
    // sides: 1/3 only has S-variation on the left, 2/3 on the right
    CHECK(derivative(one, S, 1.0 / 3.0).side == Side::left);
    CHECK(derivative(one, S, 2.0 / 3.0).side == Side::right);
    CHECK(derivative(one, S, 0.25).side == Side::both);
    // off F the derivative is zero
    for (double x : {0.5, 0.15, 0.8}) {
        auto d = derivative(one, S, x);
        CHECK(d.value == 0.0);
        CHECK(d.residual == 0.0);
    }
    // an isolated point of a flat staircase has no limit
    Staircase flat(SetSpec::finite({0.5}), 0.5);
    CHECK_THROWS_AS(derivative(one, flat, 0.5), Error);
}

TEST_CASE("derivative is linear and obeys the Leibniz rule") {
    auto u = FOnF::staircase_power(S, 1);
    auto v = FOnF::staircase_power(S, 2);
    for (double x : C.net(4, {0.0, 1.0})) {
        double du = derivative(u, S, x, 1e-4).value;
        double dv = derivative(v, S, x, 1e-4).value;
        double duv = derivative(u * v, S, x, 1e-4).value;
        CHECK(duv == Approx(du * v(x) + u(x) * dv).epsilon(1e-3).scale(1.0));
        CHECK(derivative(u * 2.5, S, x, 1e-4).value == Approx(2.5 * du).epsilon(1e-3).scale(1.0));
        CHECK(derivative(u + v, S, x, 1e-4).value == Approx(du + dv).epsilon(1e-3).scale(1.0));
    }
}

TEST_CASE("first fundamental theorem") {
    std::vector<FOnF> fs{FOnF::constant(1.0), FOnF::staircase_power(S, 1), FOnF::staircase_power(S, 2)};
    auto pts = C.net(3, {0.0, 1.0});
    for (const auto& f : fs) {
        for (double x : pts) {
            auto d = derivative_of_integral(f, S, x);
            CHECK(d.value == Approx(f(x)).epsilon(1e-3).scale(1.0));
        }
        CHECK(derivative_of_integral(f, S, 0.5).value == 0.0);
    }
}

TEST_CASE("second fundamental theorem") {
    for (int n = 1; n <= 4; ++n) {
        FOnF h{[n](double x) { return power_rule_derivative(S, n, x); }, Monotone{1}};
        if (n == 1) h.hint = Lipschitz{0.0};
        auto r = integrate(h, S, 0.0, 1.0, 1e-4);
        CHECK(r.value == Approx(std::pow(oracle::kInvGamma, n)).epsilon(1e-4).scale(1.0));
        // numeric derivative as integrand
        auto Sn = FOnF::staircase_power(S, n);
        FOnF hn{[&Sn](double x) { return derivative(Sn, S, x, 1e-5).value; }, Monotone{1}};
        auto rn = integrate(hn, S, 0.0, 1.0, 1e-3);
        CHECK(rn.value == Approx(std::pow(oracle::kInvGamma, n)).epsilon(1e-3).scale(1.0));
    }
}

TEST_CASE("integration by parts") {
    const double tol = 1e-4;
    auto chi = FOnF::indicator(C);
    auto s1 = FOnF::staircase_power(S, 1);
    auto s2 = FOnF::staircase_power(S, 2);
    auto D = [](const FOnF& f) {
        return [f](double x) { return derivative(f, S, x, 1e-5).value; };
    };
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.1, 0.7}, {0.25, 0.9}}) {
        // u = S, v = chi
        FOnF uDv{[&, d = D(chi)](double x) { return s1(x) * d(x); }, Monotone{1}};
        FOnF vDu{[&, d = D(s1)](double x) { return chi(x) * d(x); }, Lipschitz{0.0}};
        double lhs = integrate(uDv, S, a, b, tol).value;
        double rhs = s1(b) * chi(b) - s1(a) * chi(a) - integrate(vDu, S, a, b, tol).value;
        if (!C.contains(a) || !C.contains(b)) {
            // chi jumps off F, so compare on the nearest F points
            auto e = *C.extent({a, b});
            rhs = s1(e.hi) - s1(e.lo) - integrate(vDu, S, a, b, tol).value;
        }
        CHECK(std::abs(lhs - rhs) <= 3 * tol);
        // u = S^2, v = S
        FOnF uDv2{[&, d = D(s1)](double x) { return s2(x) * d(x); }, Monotone{1}};
        FOnF vDu2{[&, d = D(s2)](double x) { return s1(x) * d(x); }, Monotone{1}};
        double l2 = integrate(uDv2, S, a, b, tol).value;
        double r2 = s2(b) * s1(b) - s2(a) * s1(a) - integrate(vDu2, S, a, b, tol).value;
        CHECK(std::abs(l2 - r2) <= 3 * tol + 2e-3);
    }
}

TEST_CASE("Rolle analogue, mean value and constancy") {
    const double top = S(1.0);
    FOnF f{[top](double x) { return x <= 0.5 ? S(x) : top - S(x); }, NetSampled{}};
    bool pos = false, neg = false;
    for (double x : C.net(5, {0.0, 1.0})) {
        double d = derivative(f, S, x).value;
        CHECK(d != 0.0);
        pos = pos || d >= 0.0;
        neg = neg || d <= 0.0;
    }
    CHECK(pos);
    CHECK(neg);

    auto s2 = FOnF::staircase_power(S, 2);
    double slope = (s2(1.0) - s2(0.0)) / (S(1.0) - S(0.0));
    double hi = -1e300, lo = 1e300;
    for (double x : C.net(5, {0.0, 1.0})) {
        double d = derivative(s2, S, x).value;
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    CHECK(hi >= slope);
    CHECK(lo <= slope);

    auto k = FOnF::constant(-2.0);
    double mx = -1e300, mn = 1e300;
    for (double x : C.net(5, {0.0, 1.0})) {
        CHECK(derivative(k, S, x).value == 0.0);
        mx = std::max(mx, k(x));
        mn = std::min(mn, k(x));
    }
    CHECK(mx - mn <= 1e-4);
}

TEST_CASE("F-continuity") {
    auto chi = FOnF::indicator(C);
    FOnF xchi{[](double x) { return C.contains(x) ? x : 0.0; }, NetSampled{}};
    for (double x : {0.0, 0.25, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
        CHECK(check_f_continuity(chi, C, x).continuous);
        CHECK(check_f_continuity(xchi, C, x).continuous);
    }
    FOnF step{[](double x) { return x >= 0.25 ? 1.0 : 0.0; }, NetSampled{}};
    auto r = check_f_continuity(step, C, 0.25);
    CHECK_FALSE(r.continuous);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness < 0.25);
    CHECK(r.jump == 1.0);
    // the step is F-continuous at points away from the jump
    CHECK(check_f_continuity(step, C, 0.75).continuous);
    CHECK_THROWS_AS(check_f_continuity(chi, C, 0.5), Error);
}

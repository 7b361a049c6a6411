#include <cmath>

#include "doctest.h"
#include "fracalc/cantor.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"
#include "fracalc/physics.hpp"
#include "oracles.hpp"

using namespace fracalc;
using doctest::Approx;

namespace {

const SetSpec C = SetSpec::cantor();

FrictionParams uniform(const SetSpec& F, double alpha, double kappa, double v0 = 1.0, double x0 = 0.0) {
    FrictionParams p{Staircase(F, alpha), kappa, FOnF::constant(kappa), v0, x0};
    return p;
}

}  // namespace

TEST_CASE("diffusion density moments") {
    DiffusionParams p{Staircase(C, oracle::kAlpha)};
    for (double t : C.net(4, {0.0, 1.0})) {
        if (t == 0.0) {
            CHECK_THROWS_AS(diffusion_density(p, 0.3, t), Error);
            continue;
        }
        auto m = diffusion_moments(p, t);
        CHECK(m.norm == Approx(1.0).epsilon(1e-6));
        double s = oracle::cantor_function_real(t) * oracle::kInvGamma;
        CHECK(m.second == Approx(s).epsilon(1e-6));
    }
    // density is an even Gaussian in x
    CHECK(diffusion_density(p, 0.3, 1.0) == Approx(diffusion_density(p, -0.3, 1.0)).epsilon(1e-15));
    double s1 = oracle::kInvGamma;
    CHECK(diffusion_density(p, 0.0, 1.0) == Approx(1.0 / std::sqrt(2 * M_PI * s1)).epsilon(1e-14));
    // the density is frozen across time gaps
    CHECK(diffusion_density(p, 0.2, 0.4) == diffusion_density(p, 0.2, 0.6));
}

TEST_CASE("subdiffusive bound on the mean square displacement") {
    DiffusionParams p{Staircase(C, oracle::kAlpha)};
    for (double t : C.net(8, {0.0, 1.0})) {
        if (t == 0.0) continue;
        double msd = p.S(t);
        CHECK(msd <= staircase_power_bounds(t).second * (1 + 1e-9));
    }
}

TEST_CASE("diffusion residual") {
    DiffusionParams p{Staircase(C, oracle::kAlpha)};
    auto ts = C.net(4, {0.0, 1.0});
    int n = 0;
    for (double t : ts) {
        if (t == 0.0) continue;
        for (double x : {0.0, 0.5, -1.0}) {
            CHECK(std::abs(diffusion_residual(p, x, t)) <= 1e-3);
            ++n;
        }
    }
    CHECK(n > 20);
    CHECK(diffusion_residual(p, 0.5, 0.5) == 0.0);
    CHECK(std::abs(diffusion_residual(p, 40.0, 1.0)) <= 1e-12);
}

TEST_CASE("friction velocity limits") {
    auto none = uniform(SetSpec::empty(), 0.5, 2.0, 3.0, 0.1);
    for (double x : {0.1, 0.4, 5.0}) CHECK(friction_velocity(none, x) == 3.0);
    auto full = uniform(SetSpec::interval(-100.0, 100.0), 1.0, 0.5, 2.0, 0.25);
    for (double x : {0.25, 0.5, 1.0, 3.0}) CHECK(friction_velocity(full, x) == Approx(2.0 - 0.5 * (x - 0.25)).epsilon(1e-14));
    auto cant = uniform(C, oracle::kAlpha, 1.0);
    CHECK(friction_velocity(cant, 1.0) == Approx(1.0 - oracle::kInvGamma).epsilon(1e-12));
    CHECK_THROWS_AS(friction_velocity(cant, -0.5), Error);
    // general k through the integral agrees with the uniform closed form
    FrictionParams gen{Staircase(C, oracle::kAlpha), std::nullopt, FOnF::constant(0.3), 1.0, 0.0};
    cant.kappa = 0.3;
    for (double x : {0.2, 0.5, 0.9, 1.0}) CHECK(friction_velocity(gen, x) == Approx(friction_velocity(cant, x)).epsilon(1e-9));
}

TEST_CASE("friction velocity is nonincreasing and flat on gaps") {
    auto cant = uniform(C, oracle::kAlpha, 0.7);
    double prev = 1e300;
    for (int i = 0; i <= 300; ++i) {
        double v = friction_velocity(cant, i / 300.0);
        CHECK(v <= prev);
        prev = v;
    }
    for (const auto& g : C.gaps({0.0, 1.0}, 1e-3)) {
        double e = 1e-3 * g.length();
        CHECK(friction_velocity(cant, g.lo + e) == friction_velocity(cant, g.hi - e));
    }
}

TEST_CASE("time of flight") {
    auto none = uniform(SetSpec::empty(), 0.5, 2.0, 3.0, 0.0);
    CHECK(time_of_flight(none, 1.5) == Approx(0.5).epsilon(1e-12));
    const double k = 0.5, v0 = 2.0, x0 = 0.25;
    auto full = uniform(SetSpec::interval(-100.0, 100.0), 1.0, k, v0, x0);
    for (double x : {0.5, 1.0, 3.0, 4.0}) {
        double want = -std::log(1.0 - k * (x - x0) / v0) / k;
        CHECK(time_of_flight(full, x) == Approx(want).epsilon(1e-6));
    }
    // the particle stops at x0 + v0/k
    try {
        time_of_flight(full, 5.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::stall);
        CHECK(std::string(e.what()).find("4.24999999") != std::string::npos);
    }
    auto cant = uniform(C, oracle::kAlpha, 0.2);
    double prev = 0.0;
    for (double x : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        double t = time_of_flight(cant, x);
        CHECK(t > prev);
        CHECK(t >= x / 1.0);
        CHECK(t <= x / friction_velocity(cant, x));
        prev = t;
    }
}

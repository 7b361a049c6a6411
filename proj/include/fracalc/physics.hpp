#pragma once

#include <optional>

#include "fracalc/calculus.hpp"
#include "fracalc/mass.hpp"

namespace fracalc {

// Diffusion in fractal time: the staircase runs over the time set from t = 0.
struct DiffusionParams {
    Staircase S;
};

// Gaussian in x with variance S(t); throws degenerate_time when S(t) = 0.
double diffusion_density(const DiffusionParams& p, double x, double t);

struct Moments {
    double norm = 0.0;    // integral of W dx
    double second = 0.0;  // integral of x^2 W dx
};
Moments diffusion_moments(const DiffusionParams& p, double t);

// Time derivative through the staircase minus half the central second x-difference.
double diffusion_residual(const DiffusionParams& p, double x, double t, double hx = 1e-3, double tol = 1e-5);

// Motion with friction on a medium set; k is an F-function or a uniform kappa on F.
struct FrictionParams {
    Staircase S;
    std::optional<double> kappa;
    FOnF k;
    double v0 = 1.0;
    double x0 = 0.0;
    double v_floor = 1e-9;  // as a fraction of v0
    double tol = 1e-9;      // integral of a general k
    double tof_tol = 1e-7;  // time of flight, absolute
};

double friction_velocity(const FrictionParams& p, double x);

// Integral of 1/v from x0 to x; throws stall, naming the position, if v drops to the floor first.
double time_of_flight(const FrictionParams& p, double x);

}  // namespace fracalc

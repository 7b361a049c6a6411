#pragma once

#include <utility>
#include <vector>

namespace fracalc {

class Staircase;

struct TernaryExpansion {
    std::vector<int> digits;  // t_1 .. t_n
    // T_k = sum_{i<=k} t_i / 3^i, T_0 = 0
    double truncation(int k) const;
};

// Triadic rationals use the terminating expansion; y = 1 is 0.222...
TernaryExpansion ternary(double y, int n);

// Gamma(alpha+1) * S(x) on the middle-third Cantor set (the Cantor function), clamped outside [0,1].
double cantor_staircase_exact(double x);

// Integral of x over the Cantor set from 0 to y, by ternary digits.
double g_series(double y);

// g(1) recovered by solving the self-similar relation for it.
double g_one_fixed_point();

// D(S^n) = n S^{n-1} on F, 0 elsewhere.
double power_rule_derivative(const Staircase& S, int n, double x);
// Integral of S^n from the origin to x: S(x)^{n+1} / (n+1).
double power_rule_integral(const Staircase& S, int n, double x);

struct PowerBounds {
    double a = 0.0;  // a x^alpha <= S(x)
    double b = 0.0;  // S(x) <= b x^alpha
};

// Fit over the Cantor net at the given level (positive points only).
PowerBounds fit_staircase_power_bounds(int level = 8);
// (a x^alpha, b x^alpha) with the level-8 constants.
std::pair<double, double> staircase_power_bounds(double x);

}  // namespace fracalc

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracalc/fractal_sets.hpp"
#include "fracalc/mass.hpp"

namespace fracalc {

// |f(x) - f(y)| <= L |x - y| for x, y in F
struct Lipschitz {
    double L = 0.0;
};
// +1 nondecreasing on F, -1 nonincreasing
struct Monotone {
    int direction = 1;
};
// trust the net values, no padding
struct NetSampled {};

using BoundHint = std::variant<std::monostate, Lipschitz, Monotone, NetSampled>;

struct FOnF {
    std::function<double(double)> eval;
    BoundHint hint;

    double operator()(double x) const { return eval(x); }
    FOnF operator*(double lambda) const;

    static FOnF constant(double c);
    static FOnF identity();
    static FOnF indicator(const SetSpec& F);
    // S^n, n >= 0 (n = 0 is the constant 1)
    static FOnF staircase_power(const Staircase& S, int n);
    // linear interpolation through (x_i, y_i), constant outside
    static FOnF tabulated(std::vector<double> xs, std::vector<double> ys);
};

// Pointwise sum and product; hints combine where a bound is still certifiable.
FOnF operator+(const FOnF& f, const FOnF& g);
FOnF operator*(const FOnF& f, const FOnF& g);

// Largest |f(x)-f(y)| / |x-y| over consecutive net pairs, compared with the hint.
bool check_lipschitz_hint(const FOnF& f, const SetSpec& F, Interval I, int level, double* worst = nullptr);

// Smallest level whose resolution is at most len/8, capped by the depth limits.
int auto_level(const SetSpec& F, Interval I);

// (sup, inf) of f over F ∩ I; (0, 0) when F misses I.
std::pair<double, double> sup_inf_on(const FOnF& f, const SetSpec& F, Interval I, int level);

struct Sums {
    double upper = 0.0;
    double lower = 0.0;
};
Sums upper_lower_sums(const FOnF& f, const Staircase& S, const Subdivision& P);

struct TraceRow {
    int depth = 0;
    double lower = 0.0;
    double upper = 0.0;
};

struct IntegralResult {
    double lower = 0.0;
    double upper = 0.0;
    double value = 0.0;
    double gap = 0.0;
    int refinement_depth = 0;
    std::size_t components = 0;
    std::vector<TraceRow> trace;
};

struct IntegrateOptions {
    int max_depth = 60;
    std::size_t max_components = std::size_t{1} << 20;
};

// Refines until upper - lower <= tol; throws no_convergence at the caps.
IntegralResult integrate(const FOnF& f, const Staircase& S, double a, double b, double tol = 1e-4,
                         const IntegrateOptions& opt = {});

enum class Side { left, right, both };
const char* side_name(Side s);

struct DerivativeResult {
    double value = 0.0;
    Side side = Side::both;
    double residual = 0.0;
    int level = 0;
};

struct DerivativeOptions {
    int min_level = 4;
    int max_level = 40;  // further capped by the set and the environment
};

// F-limit of (f(y) - f(x)) / (S(y) - S(x)); zero off F. tol is relative to max(1, |value|).
DerivativeResult derivative(const FOnF& f, const Staircase& S, double x, double tol = 1e-3,
                            const DerivativeOptions& opt = {});

// Same ladder with the numerator supplied by the caller as increment(y, S(y) - S(x)).
using Increment = std::function<double(double, double)>;
DerivativeResult quotient_limit(const Staircase& S, double x, double tol, const Increment& increment,
                                const DerivativeOptions& opt = {});

// Derivative of g(x) = integral of f from a to x, with the increments integrated numerically.
DerivativeResult derivative_of_integral(const FOnF& f, const Staircase& S, double x, double tol = 1e-3,
                                        const DerivativeOptions& opt = {});

struct ContinuityCheck {
    bool continuous = true;
    double eps = 0.0;    // first failing eps
    double delta = 0.0;  // finest delta tried for it
    std::optional<double> witness;
    double jump = 0.0;  // |f(witness) - f(x)|
};

// For each eps, looks for delta = 3^-j with |f(y) - f(x)| <= eps at every net point y within delta.
ContinuityCheck check_f_continuity(const FOnF& f, const SetSpec& F, double x,
                                   const std::vector<double>& eps_ladder = {1e-1, 1e-2, 1e-3}, int max_j = 12);

}  // namespace fracalc

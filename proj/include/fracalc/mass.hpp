#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracalc/fractal_sets.hpp"

namespace fracalc {

struct MassOptions {
    double delta0 = 1.0 / 3.0;  // ladder delta_k = delta0 * ratio^k, k = 0..depth-1
    double ratio = 1.0 / 3.0;
    int depth = 8;
    int floor_level = 20;  // finest construction level used inside each coarse mass
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    double cap = 1e6;
};

enum class Verdict { converged, diverging, inconclusive };
const char* verdict_name(Verdict v);

struct CoarseMass {
    double value = 0.0;  // extrapolated over the floor level
    double bound = 0.0;  // value of the finest explicit subdivision
    bool upper_bound = false;
};

struct MassEstimate {
    double alpha = 0.0;
    double value = 0.0;
    bool infinite = false;
    std::vector<std::pair<double, double>> delta_trace;  // (delta, coarse mass)
    Verdict verdict = Verdict::inconclusive;
    bool upper_bound = false;
    bool is_zero(double tol = 1e-9) const { return !infinite && verdict == Verdict::converged && value <= tol; }
};

void check_order(double alpha);

double sigma_alpha(const SetSpec& F, const Subdivision& P, double alpha);

CoarseMass coarse_mass(const SetSpec& F, double a, double b, double alpha, double delta,
                       int floor_level = MassOptions{}.floor_level);

MassEstimate mass(const SetSpec& F, double a, double b, double alpha, const MassOptions& opt = {});

// Verdict of a ladder of coarse masses ordered by decreasing delta.
Verdict classify_ladder(const std::vector<double>& values, const MassOptions& opt, double* limit);

enum class StaircaseMode { exact, numeric };

class Staircase {
public:
    // Uses a closed form when one exists for the set and order, else the numeric pipeline.
    Staircase(SetSpec F, double alpha, double a0 = 0.0, MassOptions opt = {});
    static Staircase numeric(SetSpec F, double alpha, double a0 = 0.0, MassOptions opt = {});

    double operator()(double x) const;
    // Gamma(alpha+1) * S(x)
    double normalized(double x) const;

    StaircaseMode mode() const { return mode_; }
    const SetSpec& set() const { return F_; }
    double alpha() const { return alpha_; }
    double origin() const { return a0_; }
    double gamma() const { return gamma_; }
    StaircaseFn fn() const {
        return [s = *this](double x) { return s(x); };
    }

private:
    double span(double lo, double hi) const;
    double exact_span(double lo, double hi) const;

    SetSpec F_;
    double alpha_;
    double a0_;
    MassOptions opt_;
    StaircaseMode mode_ = StaircaseMode::numeric;
    double gamma_ = 1.0;
};

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
};

struct ScalingReport {
    IdentityCheck scaling;      // mass(lambda F, lambda a, lambda b) vs lambda^alpha mass(F, a, b)
    IdentityCheck translation;  // mass(F + shift, a + shift, b + shift) vs mass(F, a, b)
};

IdentityCheck compare(double lhs, double rhs);

ScalingReport verify_scaling_translation(const SetSpec& F, double a, double b, double alpha, double lambda,
                                         double shift, const MassOptions& opt = {});

}  // namespace fracalc

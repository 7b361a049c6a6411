#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracalc/fractal_sets.hpp"
#include "fracalc/mass.hpp"

namespace fracalc {

struct AlphaProbe {
    double alpha = 0.0;
    Verdict verdict = Verdict::inconclusive;
    double value = 0.0;
};

struct BoxCount {
    double delta = 0.0;
    std::size_t count = 0;
};

enum class DimensionStatus { ok, inconclusive };

struct DimensionReport {
    double gamma_dim = 0.0;
    double box_dim = 0.0;
    std::vector<AlphaProbe> alpha_trace;
    std::pair<double, double> bracket{0.0, 1.0};
    std::vector<BoxCount> box_trace;
    DimensionStatus status = DimensionStatus::ok;
    std::string note;
};

struct BoxOptions {
    int kmin = 2;  // delta = 3^-k
    int kmax = 12;
};

// Bisection over alpha; diverging probes raise the lower end, converged probes lower the upper end.
DimensionReport gamma_dimension(const SetSpec& F, double a, double b, double tol, const MassOptions& opt = {});

// Minimal number of closed delta-grid boxes covering F ∩ [a,b].
std::size_t box_count(const SetSpec& F, double a, double b, double delta);

// Least-squares slope of ln N against -ln delta.
double box_dimension(const SetSpec& F, double a, double b, const BoxOptions& opt = {},
                     std::vector<BoxCount>* trace = nullptr);

DimensionReport dimension_report(const SetSpec& F, double a, double b, double tol, const MassOptions& opt = {},
                                 const BoxOptions& box = {});

// Similarity dimension of the base set when it is known in closed form (affine maps keep it).
std::optional<double> known_dimension(const SetSpec& F);

struct AutoAlpha {
    double alpha = 0.0;
    double estimate = 0.0;
    bool snapped = false;
};
// Estimates the gamma-dimension and snaps to the closed form when that lies inside the final bracket
// (widened by tol). Throws invalid_order when the estimate is within tol of 0.
AutoAlpha resolve_auto_alpha(const SetSpec& F, double a, double b, double tol = 0.02);

}  // namespace fracalc

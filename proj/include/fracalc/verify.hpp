#pragma once

#include <string>
#include <vector>

namespace fracalc {

struct Measure {
    std::string label;
    double value = 0.0;
    double limit = 0.0;
    bool ok() const { return value <= limit; }
};

struct CheckResult {
    std::string id;
    std::string name;
    std::vector<Measure> measures;
    double seconds = 0.0;
    bool passed = false;
    std::string note;  // set when the check threw

    double worst_ratio() const;
    std::string summary() const;
};

// Acceptance criteria 1..10.
CheckResult run_acceptance_criterion(int k);
std::vector<CheckResult> run_acceptance();

// Invariants of the set, mass, dimension, calculus, Cantor and physics modules.
std::vector<CheckResult> run_properties();

}  // namespace fracalc

#include "fracalc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fracalc/error.hpp"

namespace fracalc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_spec: return "invalid-spec";
        case Errc::invalid_order: return "invalid-order";
        case Errc::resolution_exceeded: return "resolution-exceeded";
        case Errc::diverging_mass: return "diverging-mass";
        case Errc::unbounded_hint: return "unbounded-hint";
        case Errc::no_convergence: return "no-convergence";
        case Errc::no_limit: return "no-limit";
        case Errc::degenerate_time: return "degenerate-time";
        case Errc::stall: return "stall";
        case Errc::inconclusive_probe: return "inconclusive-probe";
        case Errc::usage: return "usage";
    }
    return "error";
}

int max_level() {
    static const int cached = [] {
        const char* env = std::getenv("FRACTAL_CALC_MAX_LEVEL");
        if (!env || !*env) return 30;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) return 30;
        return static_cast<int>(v > 60 ? 60 : v);
    }();
    return cached;
}

double gamma1p(double alpha) { return std::tgamma(alpha + 1.0); }

}  // namespace fracalc

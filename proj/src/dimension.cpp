#include "fracalc/dimension.hpp"

#include <cmath>
#include <sstream>

#include "detail/base_sets.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"

namespace fracalc {

namespace {

void require_nonempty(const SetSpec& F, double a, double b) {
    if (!(a <= b)) throw Error(Errc::invalid_spec, "dimension needs a <= b");
    if (!F.intersects({a, b})) throw Error(Errc::invalid_spec, "set does not meet [a,b]");
}

}  // namespace

DimensionReport gamma_dimension(const SetSpec& F, double a, double b, double tol, const MassOptions& opt) {
    if (!(tol > 0.0 && tol < 0.5)) throw Error(Errc::invalid_spec, "dimension tolerance must lie in (0, 0.5)");
    require_nonempty(F, a, b);
    DimensionReport r;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        auto est = mass(F, a, b, mid, opt);
        if (est.verdict == Verdict::inconclusive) {
            MassOptions deeper = opt;
            deeper.depth = opt.depth + 4;
            est = mass(F, a, b, mid, deeper);
        }
        r.alpha_trace.push_back({mid, est.verdict, est.value});
        if (est.verdict == Verdict::inconclusive) {
            r.status = DimensionStatus::inconclusive;
            r.note = "inconclusive-probe at alpha " + std::to_string(mid) + "; bracket left wide";
            break;
        }
        (est.verdict == Verdict::diverging ? lo : hi) = mid;
    }
    r.bracket = {lo, hi};
    r.gamma_dim = 0.5 * (lo + hi);
    return r;
}

std::size_t box_count(const SetSpec& F, double a, double b, double delta) {
    if (!(delta > 0.0)) throw Error(Errc::invalid_spec, "box size must be positive");
    std::size_t n = 0;
    double cursor = a;
    double last = -INFINITY;  // index of the last box used
    bool strict = false;
    while (true) {
        auto p = F.first_at_or_after(cursor, strict);
        if (!p || *p > b) break;
        double r = *p / delta;
        double j = std::nearbyint(r);
        bool on_line = std::abs(r - j) <= 1e-9;
        if (!on_line) j = std::floor(r);
        if (on_line && j == last + 1.0) {
            // right edge of the previous box; step past the snapping window
            cursor = *p + 2e-9 * delta;
            strict = false;
            continue;
        }
        strict = true;
        ++n;
        last = j;
        cursor = std::max(*p, (j + 1.0) * delta);
    }
    return n;
}

double box_dimension(const SetSpec& F, double a, double b, const BoxOptions& opt, std::vector<BoxCount>* trace) {
    require_nonempty(F, a, b);
    if (opt.kmax <= opt.kmin) throw Error(Errc::invalid_spec, "box ladder needs kmax > kmin");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = opt.kmin; k <= opt.kmax; ++k) {
        double delta = std::pow(3.0, -k);
        auto N = box_count(F, a, b, delta);
        if (trace) trace->push_back({delta, N});
        double x = -std::log(delta), y = std::log(static_cast<double>(N));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DimensionReport dimension_report(const SetSpec& F, double a, double b, double tol, const MassOptions& opt,
                                 const BoxOptions& box) {
    auto r = gamma_dimension(F, a, b, tol, opt);
    r.box_dim = box_dimension(F, a, b, box, &r.box_trace);
    return r;
}

std::optional<double> known_dimension(const SetSpec& F) {
    if (F.is_empty()) return std::nullopt;
    switch (F.kind()) {
        case SetKind::cantor: return cantor_dimension;
        case SetKind::gap_ifs:
            return similarity_dimension(static_cast<const detail::GapIfsSet&>(F.base()).ratios());
        case SetKind::interval: return F.hull()->length() > 0.0 ? 1.0 : 0.0;
        case SetKind::finite:
        case SetKind::harmonic: return 0.0;
    }
    return std::nullopt;
}

AutoAlpha resolve_auto_alpha(const SetSpec& F, double a, double b, double tol) {
    auto r = gamma_dimension(F, a, b, tol);
    AutoAlpha out;
    out.estimate = r.gamma_dim;
    out.alpha = r.gamma_dim;
    auto exact = known_dimension(F);
    if (exact && *exact > 0.0 && *exact >= r.bracket.first - tol && *exact <= r.bracket.second + tol) {
        out.alpha = *exact;
        out.snapped = true;
    }
    if (!(out.alpha > tol)) {
        std::ostringstream os;
        os << "estimated gamma-dimension " << r.gamma_dim
           << " is indistinguishable from 0, so every positive order gives a zero staircase; pass --alpha";
        throw Error(Errc::invalid_order, os.str());
    }
    return out;
}

}  // namespace fracalc

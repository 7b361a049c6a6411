#include "fracalc/mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "detail/base_sets.hpp"
#include "detail/tree.hpp"
#include "fracalc/cantor.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"

namespace fracalc {

using detail::BaseSet;
using detail::Node;
using detail::NodeKind;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::diverging: return "diverging";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

void check_order(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw Error(Errc::invalid_order, "order alpha must lie in (0,1], got " + std::to_string(alpha));
}

double sigma_alpha(const SetSpec& F, const Subdivision& P, double alpha) {
    check_order(alpha);
    double s = 0.0;
    for (std::size_t i = 1; i < P.points.size(); ++i) {
        Interval c{P.points[i - 1], P.points[i]};
        if (F.intersects(c)) s += std::pow(c.length(), alpha);
    }
    return s / gamma1p(alpha);
}

namespace {

// Cheapest subdivision of a node found by choosing, at every node, between tiling its hull
// and recursing into the children. Gaps and isolated points cost nothing.
class CoverDp {
public:
    CoverDp(const BaseSet& B, double alpha, double delta, int floor, Interval I)
        : B_(B), alpha_(alpha), delta_(delta), floor_(floor), I_(I) {}

    double run() {
        auto r = B_.root();
        if (!r || !(I_.hi > I_.lo)) return 0.0;
        return partial(*r);
    }

private:
    double tile(double len) const {
        if (!(len > 0.0)) return 0.0;
        double k = std::max(1.0, std::ceil(len / delta_ - 1e-9));
        return k * std::pow(len / k, alpha_);
    }

    double full(const Node& n) {
        switch (n.kind) {
            case NodeKind::block: return 0.0;
            case NodeKind::solid: return tile(n.length());
            default: break;
        }
        if (n.depth >= floor_) return tile(n.length());
        auto key = B_.memo_key(n);
        if (key) {
            auto it = memo_.find(*key);
            if (it != memo_.end()) return it->second;
        }
        std::vector<Node> ch;
        B_.children(n, ch);
        double v = tile(n.length());
        if (!ch.empty()) {
            double s = 0.0;
            for (const auto& c : ch) s += full(c);
            v = std::min(v, s);
        }
        if (key) memo_.emplace(*key, v);
        return v;
    }

    double partial(const Node& n) {
        if (n.hi < I_.lo || n.lo > I_.hi) return 0.0;
        if (n.lo >= I_.lo && n.hi <= I_.hi) return full(n);
        switch (n.kind) {
            case NodeKind::block: return 0.0;
            case NodeKind::solid: return tile(std::min(n.hi, I_.hi) - std::max(n.lo, I_.lo));
            default: break;
        }
        auto f = detail::node_first(B_, n, I_.lo, false);
        auto l = detail::node_last(B_, n, I_.hi, false);
        if (!f || !l || *f > *l) return 0.0;
        double v = tile(*l - *f);
        if (n.depth >= floor_) return v;
        std::vector<Node> ch;
        B_.children(n, ch);
        if (ch.empty()) return v;
        double s = 0.0;
        for (const auto& c : ch) s += partial(c);
        return std::min(v, s);
    }

    const BaseSet& B_;
    double alpha_, delta_;
    int floor_;
    Interval I_;
    std::unordered_map<std::uint64_t, double> memo_;
};

// Deepest floor worth running: below the delta scale, within the set's depth, and small enough
// that memo tables of many-map sets stay bounded.
int effective_floor(const BaseSet& B, double delta, int wanted) {
    int limit = B.depth_limit();
    if (limit == 0) return 0;
    int scale_level = 0;
    while (scale_level < limit && B.resolution(scale_level) > delta) ++scale_level;
    int L = std::max(wanted, scale_level + 6);
    if (auto* g = dynamic_cast<const detail::GapIfsSet*>(&B)) {
        const double m = static_cast<double>(g->ratios().size());
        auto classes = [&](int l) {
            double c = 1.0;
            for (int i = 1; i < m; ++i) c = c * (l + i) / i;
            return c;
        };
        while (L > 2 && classes(L) > 2e5) --L;
    }
    return std::min(L, limit);
}

}  // namespace

CoarseMass coarse_mass(const SetSpec& F, double a, double b, double alpha, double delta, int floor_level) {
    check_order(alpha);
    if (!(delta > 0.0)) throw Error(Errc::invalid_spec, "delta must be positive");
    if (a > b) throw Error(Errc::invalid_spec, "coarse mass needs a <= b");
    CoarseMass out;
    out.upper_bound = F.kind() == SetKind::gap_ifs || F.kind() == SetKind::harmonic;
    if (a == b || F.is_empty()) return out;

    const BaseSet& B = F.base();
    const double s = F.scale();
    Interval I{F.to_base(a), F.to_base(b)};
    const double d = delta / s;
    const double norm = std::pow(s, alpha) / gamma1p(alpha);

    int L = effective_floor(B, d, floor_level);
    if (L < 2) {
        out.value = out.bound = norm * CoverDp(B, alpha, d, L, I).run();
        return out;
    }
    double c0 = CoverDp(B, alpha, d, L - 2, I).run();
    double c1 = CoverDp(B, alpha, d, L - 1, I).run();
    double c2 = CoverDp(B, alpha, d, L, I).run();
    double v = c2;
    double d1 = c0 - c1, d2 = c1 - c2;
    if (d1 > 0.0 && d2 > 1e-14 * c2) {
        double q = d2 / d1;
        if (q < 1.0) v = c2 - d2 * q / (1.0 - q);
    }
    v = std::clamp(v, 0.0, c2);
    if (v <= 1e-9 * c0) v = 0.0;
    out.value = norm * v;
    out.bound = norm * c2;
    return out;
}

Verdict classify_ladder(const std::vector<double>& g, const MassOptions& opt, double* limit) {
    const std::size_t n = g.size();
    *limit = n ? g.back() : 0.0;
    if (n == 0) return Verdict::inconclusive;
    const double last = g.back();
    if (!std::isfinite(last)) return Verdict::diverging;
    auto inc = [&](std::size_t k) { return g[k] - g[k - 1]; };
    if (last > opt.cap && n >= 2 && inc(n - 1) > 0.0) return Verdict::diverging;
    if (n >= 3) {
        bool flat = true;
        for (std::size_t k = n - 2; k < n; ++k)
            if (std::abs(inc(k)) > std::max(opt.abs_tol, opt.rel_tol * g[k])) flat = false;
        if (flat) return Verdict::converged;
    }
    if (n < 4) return Verdict::inconclusive;
    bool rising = true;
    for (std::size_t k = n - 3; k < n; ++k)
        if (!(g[k - 1] > 0.0 && g[k] > g[k - 1] * (1.0 + 1e-9))) rising = false;
    if (!rising) return Verdict::inconclusive;
    if (n >= 7) {
        // compare growth over the last three steps with the three before, which absorbs
        // ladders whose ratio is not commensurate with the set's own scales
        double w1 = g[n - 1] - g[n - 4], w0 = g[n - 4] - g[n - 7];
        double l1 = std::log(g[n - 1] / g[n - 4]), l0 = std::log(g[n - 4] / g[n - 7]);
        if (l0 > 0.0 && l1 >= 0.5 * l0) return Verdict::diverging;
        if (w0 > 0.0 && w1 < w0) {
            double q = w1 / w0;
            *limit = last + w1 * q / (1.0 - q);
            return Verdict::converged;
        }
        return Verdict::inconclusive;
    }
    double r2 = g[n - 1] / g[n - 2], r1 = g[n - 2] / g[n - 3];
    if (r2 - 1.0 >= 0.8 * (r1 - 1.0)) return Verdict::diverging;
    double a = inc(n - 2), c = inc(n - 1);
    if (a > 0.0 && c < 0.8 * a) {
        double q = c / a;
        *limit = last + c * q / (1.0 - q);
        return Verdict::converged;
    }
    return Verdict::inconclusive;
}

MassEstimate mass(const SetSpec& F, double a, double b, double alpha, const MassOptions& opt) {
    check_order(alpha);
    if (!(opt.delta0 > 0.0 && opt.ratio > 0.0 && opt.ratio < 1.0 && opt.depth >= 1))
        throw Error(Errc::invalid_spec, "mass ladder needs delta0 > 0, 0 < ratio < 1, depth >= 1");
    if (a > b) throw Error(Errc::invalid_spec, "mass needs a <= b");
    MassEstimate est;
    est.alpha = alpha;
    std::vector<double> vals;
    double delta = opt.delta0;
    double running = 0.0;
    for (int k = 0; k < opt.depth; ++k, delta *= opt.ratio) {
        auto c = coarse_mass(F, a, b, alpha, delta, opt.floor_level);
        est.upper_bound = est.upper_bound || c.upper_bound;
        running = std::max(running, c.value);
        vals.push_back(running);
        est.delta_trace.emplace_back(delta, running);
    }
    double lim = 0.0;
    est.verdict = classify_ladder(vals, opt, &lim);
    if (est.verdict == Verdict::diverging) {
        est.infinite = true;
        est.value = std::numeric_limits<double>::infinity();
    } else {
        est.value = lim;
    }
    return est;
}

// ---- staircase

namespace {

bool near_order(double a, double b) { return std::abs(a - b) <= 1e-12; }

bool has_closed_form(const SetSpec& F, double alpha) {
    switch (F.kind()) {
        case SetKind::cantor:
        case SetKind::finite:
        case SetKind::harmonic: return true;
        case SetKind::interval: return true;
        case SetKind::gap_ifs: return false;
    }
    (void)alpha;
    return false;
}

}  // namespace

Staircase::Staircase(SetSpec F, double alpha, double a0, MassOptions opt)
    : F_(std::move(F)), alpha_(alpha), a0_(a0), opt_(opt) {
    check_order(alpha_);
    gamma_ = gamma1p(alpha_);
    mode_ = has_closed_form(F_, alpha_) ? StaircaseMode::exact : StaircaseMode::numeric;
}

Staircase Staircase::numeric(SetSpec F, double alpha, double a0, MassOptions opt) {
    Staircase s(std::move(F), alpha, a0, opt);
    s.mode_ = StaircaseMode::numeric;
    return s;
}

double Staircase::exact_span(double lo, double hi) const {
    switch (F_.kind()) {
        case SetKind::finite:
        case SetKind::harmonic: return 0.0;
        case SetKind::cantor: {
            double u = cantor_staircase_exact(F_.to_base(hi)) - cantor_staircase_exact(F_.to_base(lo));
            if (u <= 0.0) return 0.0;
            if (near_order(alpha_, cantor_dimension)) return std::pow(F_.scale(), alpha_) * u / gamma_;
            if (alpha_ > cantor_dimension) return 0.0;
            break;
        }
        case SetKind::interval: {
            auto& iv = static_cast<const detail::IntervalSet&>(F_.base());
            double l = std::max(F_.to_base(lo), iv.lo()), h = std::min(F_.to_base(hi), iv.hi());
            if (!(h > l)) return 0.0;
            if (alpha_ == 1.0) return F_.scale() * (h - l);
            break;
        }
        case SetKind::gap_ifs: break;
    }
    throw Error(Errc::diverging_mass, "staircase is infinite on [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "] for order " + std::to_string(alpha_));
}

double Staircase::span(double lo, double hi) const {
    if (mode_ == StaircaseMode::exact) return exact_span(lo, hi);
    auto est = mass(F_, lo, hi, alpha_, opt_);
    if (est.verdict == Verdict::diverging)
        throw Error(Errc::diverging_mass, "staircase is infinite on [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "] for order " + std::to_string(alpha_));
    return est.value;
}

double Staircase::operator()(double x) const {
    if (x == a0_) return 0.0;
    return x > a0_ ? span(a0_, x) : -span(x, a0_);
}

double Staircase::normalized(double x) const { return gamma_ * (*this)(x); }

// ---- identities

IdentityCheck compare(double lhs, double rhs) {
    IdentityCheck c{lhs, rhs, 0.0, 0.0};
    if (std::isinf(lhs) || std::isinf(rhs)) {
        bool same = std::isinf(lhs) && std::isinf(rhs);
        c.abs_err = c.rel_err = same ? 0.0 : std::numeric_limits<double>::infinity();
        return c;
    }
    c.abs_err = std::abs(lhs - rhs);
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    c.rel_err = scale > 0.0 ? c.abs_err / scale : 0.0;
    return c;
}

ScalingReport verify_scaling_translation(const SetSpec& F, double a, double b, double alpha, double lambda,
                                         double shift, const MassOptions& opt) {
    if (!(lambda >= 0.0)) throw Error(Errc::invalid_spec, "scaling needs lambda >= 0");
    ScalingReport r;
    auto base = mass(F, a, b, alpha, opt);
    auto scaled = mass(F.scaled(lambda), lambda * a, lambda * b, alpha, opt);
    double rhs = base.infinite ? (lambda > 0.0 ? base.value : 0.0) : std::pow(lambda, alpha) * base.value;
    r.scaling = compare(scaled.value, rhs);
    auto moved = mass(F.translated(shift), a + shift, b + shift, alpha, opt);
    r.translation = compare(moved.value, base.value);
    return r;
}

}  // namespace fracalc

#include "fracalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracalc/config.hpp"
#include "fracalc/error.hpp"

namespace fracalc {

namespace {

// solids and finite sets have no construction depth; their nets exist at every level
int level_cap(const SetSpec& F, int want = 40) {
    int cap = std::min(want, max_level());
    return F.depth_limit() > 0 ? std::min(cap, F.depth_limit()) : cap;
}

double scale_of(double q) { return std::max(1.0, std::abs(q)); }

bool hinted(const BoundHint& h) { return !std::holds_alternative<std::monostate>(h); }

}  // namespace

// ---- functions on F

FOnF FOnF::operator*(double lambda) const {
    FOnF out;
    out.eval = [f = eval, lambda](double x) { return lambda * f(x); };
    if (lambda == 0.0) {
        out.hint = Lipschitz{0.0};
    } else if (auto* l = std::get_if<Lipschitz>(&hint)) {
        out.hint = Lipschitz{std::abs(lambda) * l->L};
    } else if (auto* m = std::get_if<Monotone>(&hint)) {
        out.hint = Monotone{lambda > 0 ? m->direction : -m->direction};
    } else {
        out.hint = hint;
    }
    return out;
}

FOnF FOnF::constant(double c) {
    return {[c](double) { return c; }, Lipschitz{0.0}};
}

FOnF FOnF::identity() {
    return {[](double x) { return x; }, Monotone{1}};
}

FOnF FOnF::indicator(const SetSpec& F) {
    return {[F](double x) { return F.contains(x) ? 1.0 : 0.0; }, Lipschitz{0.0}};
}

FOnF FOnF::staircase_power(const Staircase& S, int n) {
    if (n < 0) throw Error(Errc::invalid_spec, "staircase power needs n >= 0");
    if (n == 0) return constant(1.0);
    FOnF out;
    out.eval = [S, n](double x) { return std::pow(S(x), n); };
    // S changes sign at the origin, so even powers are monotone only when F lies to its right
    auto h = S.set().hull();
    bool right_of_origin = !h || h->lo >= S.origin();
    out.hint = (n % 2 == 1 || right_of_origin) ? BoundHint{Monotone{1}} : BoundHint{NetSampled{}};
    return out;
}

FOnF FOnF::tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw Error(Errc::invalid_spec, "tabulated function needs matching nonempty x and y columns");
    double L = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i - 1] < xs[i])) throw Error(Errc::invalid_spec, "tabulated x values must increase");
        L = std::max(L, std::abs(ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
    }
    FOnF out;
    out.hint = Lipschitz{L};
    out.eval = [xs = std::move(xs), ys = std::move(ys)](double x) {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    };
    return out;
}

FOnF operator+(const FOnF& f, const FOnF& g) {
    FOnF out;
    out.eval = [a = f.eval, b = g.eval](double x) { return a(x) + b(x); };
    auto* lf = std::get_if<Lipschitz>(&f.hint);
    auto* lg = std::get_if<Lipschitz>(&g.hint);
    auto* mf = std::get_if<Monotone>(&f.hint);
    auto* mg = std::get_if<Monotone>(&g.hint);
    if (lf && lg)
        out.hint = Lipschitz{lf->L + lg->L};
    else if (mf && mg && mf->direction == mg->direction)
        out.hint = *mf;
    else if (mf && lg && lg->L == 0.0)
        out.hint = *mf;
    else if (mg && lf && lf->L == 0.0)
        out.hint = *mg;
    else if (hinted(f.hint) && hinted(g.hint))
        out.hint = NetSampled{};
    return out;
}

FOnF operator*(const FOnF& f, const FOnF& g) {
    FOnF out;
    out.eval = [a = f.eval, b = g.eval](double x) { return a(x) * b(x); };
    if (hinted(f.hint) && hinted(g.hint)) out.hint = NetSampled{};
    return out;
}

bool check_lipschitz_hint(const FOnF& f, const SetSpec& F, Interval I, int level, double* worst) {
    auto* l = std::get_if<Lipschitz>(&f.hint);
    auto pts = F.net(level, I);
    double w = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double dx = pts[i] - pts[i - 1];
        if (dx > 0.0) w = std::max(w, std::abs(f(pts[i]) - f(pts[i - 1])) / dx);
    }
    if (worst) *worst = w;
    return !l || w <= l->L * (1 + 1e-9) + 1e-12;
}

int auto_level(const SetSpec& F, Interval I) {
    const int cap = level_cap(F);
    const double len = I.length();
    for (int k = 0; k < cap; ++k)
        if (F.resolution(k) <= len / 8.0) return k;
    return cap;
}

std::pair<double, double> sup_inf_on(const FOnF& f, const SetSpec& F, Interval I, int level) {
    if (!hinted(f.hint))
        throw Error(Errc::unbounded_hint, "sup/inf over F needs a Lipschitz, monotone or net-sampled hint");
    auto e = F.extent(I);
    if (!e) return {0.0, 0.0};
    double flo = f(e->lo);
    if (e->lo == e->hi) return {flo, flo};
    if (std::holds_alternative<Monotone>(f.hint)) {
        double fhi = f(e->hi);
        return {std::max(flo, fhi), std::min(flo, fhi)};
    }
    auto* l = std::get_if<Lipschitz>(&f.hint);
    if (l && l->L == 0.0) return {flo, flo};
    level = std::clamp(level, 0, level_cap(F));
    double fhi = f(e->hi);
    double M = std::max(flo, fhi), m = std::min(flo, fhi);
    for (double x : F.net(level, *e)) {
        double v = f(x);
        M = std::max(M, v);
        m = std::min(m, v);
    }
    if (l) {
        // every point of F ∩ I is within one resolution of a net point or an extent end inside I
        double pad = l->L * F.resolution(level);
        M += pad;
        m -= pad;
    }
    return {M, m};
}

Sums upper_lower_sums(const FOnF& f, const Staircase& S, const Subdivision& P) {
    Sums s;
    const auto& F = S.set();
    if (P.points.empty()) return s;
    double prev = S(P.points.front());
    for (std::size_t i = 1; i < P.points.size(); ++i) {
        double cur = S(P.points[i]);
        double dS = cur - prev;
        if (dS != 0.0) {
            Interval I{P.points[i - 1], P.points[i]};
            auto [M, m] = sup_inf_on(f, F, I, auto_level(F, I));
            s.upper += M * dS;
            s.lower += m * dS;
        }
        prev = cur;
    }
    return s;
}

// ---- integral

namespace {

struct Component {
    double lo, hi;
    double Slo, Shi;
    double M = 0.0, m = 0.0;
    bool final = false;
    double dS() const { return std::max(0.0, Shi - Slo); }
    double width() const { return (M - m) * dS(); }
};

Component make_component(const FOnF& f, const SetSpec& F, double lo, double hi, double Slo, double Shi) {
    Component c{lo, hi, Slo, Shi};
    if (c.dS() > 0.0) {
        Interval I{lo, hi};
        std::tie(c.M, c.m) = sup_inf_on(f, F, I, auto_level(F, I));
    }
    return c;
}

}  // namespace

IntegralResult integrate(const FOnF& f, const Staircase& S, double a, double b, double tol,
                         const IntegrateOptions& opt) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw Error(Errc::invalid_spec, "integration limits must be finite");
    if (!(tol > 0.0)) throw Error(Errc::invalid_spec, "integration tolerance must be positive");
    if (!hinted(f.hint)) throw Error(Errc::unbounded_hint, "integrand needs a bound hint");
    if (b < a) {
        auto r = integrate(f, S, b, a, tol, opt);
        std::swap(r.lower, r.upper);
        r.lower = -r.lower;
        r.upper = -r.upper;
        r.value = -r.value;
        for (auto& t : r.trace) {
            std::swap(t.lower, t.upper);
            t.lower = -t.lower;
            t.upper = -t.upper;
        }
        return r;
    }
    IntegralResult r;
    const auto& F = S.set();
    auto e = F.extent({a, b});
    if (!e) {
        r.trace.push_back({0, 0.0, 0.0});
        return r;
    }
    std::vector<Component> comps, next;
    comps.push_back(make_component(f, F, e->lo, e->hi, S(e->lo), S(e->hi)));
    const double total = comps.front().dS();

    for (int depth = 0;; ++depth) {
        double U = 0.0, L = 0.0;
        for (const auto& c : comps) {
            U += c.M * c.dS();
            L += c.m * c.dS();
        }
        r.trace.push_back({depth, L, U});
        r.lower = L;
        r.upper = U;
        r.gap = U - L;
        r.value = 0.5 * (U + L);
        r.refinement_depth = depth;
        r.components = comps.size();
        if (r.gap <= tol) return r;
        if (depth >= opt.max_depth || comps.size() > opt.max_components) {
            std::ostringstream os;
            os.precision(17);
            os << "integral bracket [" << L << ", " << U << "] still wider than " << tol << " after " << depth
               << " refinements (gap " << r.gap << ")";
            throw Error(Errc::no_convergence, os.str());
        }
        // a component is done once its oscillation times the whole staircase rise fits in tol
        const double osc_ok = tol / total;
        next.clear();
        bool split_any = false;
        for (const auto& c : comps) {
            if (c.final || c.M - c.m <= osc_ok) {
                next.push_back(c);
                continue;
            }
            double mid = 0.5 * (c.lo + c.hi);
            if (!(mid > c.lo && mid < c.hi)) {
                next.push_back(c);
                next.back().final = true;
                continue;
            }
            split_any = true;
            // shrink both halves onto F so the new breakpoints sit on gap ends
            double lhi = F.last_at_or_before(mid).value_or(c.lo);
            double rlo = F.first_at_or_after(mid).value_or(c.hi);
            double Sm = S(mid);
            Component lc = make_component(f, F, c.lo, lhi, c.Slo, Sm);
            Component rc = make_component(f, F, rlo, c.hi, Sm, c.Shi);
            if (lc.dS() > 0.0) next.push_back(lc);
            if (rc.dS() > 0.0) next.push_back(rc);
        }
        if (!split_any) {
            std::ostringstream os;
            os.precision(17);
            os << "integral bracket [" << L << ", " << U << "] cannot be refined further (gap " << r.gap << ")";
            throw Error(Errc::no_convergence, os.str());
        }
        comps.swap(next);
    }
}

// ---- derivative

const char* side_name(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::both: return "both";
    }
    return "both";
}

DerivativeResult quotient_limit(const Staircase& S, double x, double tol, const Increment& increment,
                                const DerivativeOptions& opt) {
    const auto& F = S.set();
    DerivativeResult out;
    if (!F.contains(x)) return out;
    const double Sx = S(x);
    const int cap = level_cap(F, opt.max_level);

    struct History {
        double q[3] = {0, 0, 0};
        int n = 0;
        double last_y = NAN;
        void push(double v) {
            q[0] = q[1];
            q[1] = q[2];
            q[2] = v;
            ++n;
        }
        double d1() const { return std::abs(q[2] - q[1]); }
        double d0() const { return std::abs(q[1] - q[0]); }
        bool settled(double tol) const {
            double lim = 0.25 * tol * scale_of(q[2]);
            return n >= 3 && d1() <= lim && d0() <= lim;
        }
    };
    History hist[2];
    bool ever = false;
    for (int k = opt.min_level; k <= cap; ++k) {
        const double r = F.resolution(k);
        bool active[2] = {false, false};
        for (int s = 0; s < 2; ++s) {
            auto y = s == 0 ? F.last_at_or_before(x - r) : F.first_at_or_after(x + r);
            double dS = y ? S(*y) - Sx : 0.0;
            if (!y || dS == 0.0) {
                hist[s].n = 0;
                hist[s].last_y = NAN;
                continue;
            }
            active[s] = true;
            // x - r can sit in one gap for several levels; the same y says nothing new
            if (*y == hist[s].last_y) continue;
            hist[s].last_y = *y;
            hist[s].push(increment(*y, dS) / dS);
        }
        if (!active[0] && !active[1]) continue;
        ever = true;
        bool ok = true;
        for (int s = 0; s < 2; ++s)
            if (active[s]) ok = ok && hist[s].settled(tol);
        if (!ok) continue;
        if (active[0] && active[1]) {
            double ql = hist[0].q[2], qr = hist[1].q[2];
            double avg = 0.5 * (ql + qr);
            if (std::abs(ql - qr) > tol * scale_of(avg)) continue;
            out.value = avg;
            out.side = Side::both;
            out.residual = std::max({hist[0].d1(), hist[1].d1(), std::abs(ql - qr)});
        } else {
            int s = active[0] ? 0 : 1;
            out.value = hist[s].q[2];
            out.side = s == 0 ? Side::left : Side::right;
            out.residual = hist[s].d1();
        }
        out.level = k;
        return out;
    }
    std::ostringstream os;
    os.precision(17);
    if (!ever) {
        os << "staircase is flat on both sides of x = " << x;
    } else {
        os << "difference quotients at x = " << x << " did not settle within " << tol << " by level " << cap
           << " (left " << (hist[0].n ? hist[0].q[2] : NAN) << ", right " << (hist[1].n ? hist[1].q[2] : NAN)
           << ")";
    }
    throw Error(Errc::no_limit, os.str());
}

DerivativeResult derivative(const FOnF& f, const Staircase& S, double x, double tol, const DerivativeOptions& opt) {
    if (!S.set().contains(x)) return {};
    const double fx = f(x);
    return quotient_limit(S, x, tol, [&](double y, double) { return f(y) - fx; }, opt);
}

DerivativeResult derivative_of_integral(const FOnF& f, const Staircase& S, double x, double tol,
                                        const DerivativeOptions& opt) {
    if (!S.set().contains(x)) return {};
    const double fscale = scale_of(f(x));
    return quotient_limit(
        S, x, tol,
        [&](double y, double dS) { return integrate(f, S, x, y, 0.05 * tol * fscale * std::abs(dS)).value; }, opt);
}

// ---- F-continuity

ContinuityCheck check_f_continuity(const FOnF& f, const SetSpec& F, double x, const std::vector<double>& eps_ladder,
                                   int max_j) {
    if (!F.contains(x)) throw Error(Errc::invalid_spec, "F-continuity is checked at points of F");
    ContinuityCheck out;
    const double fx = f(x);
    const int cap = level_cap(F, 24);
    for (double eps : eps_ladder) {
        bool found = false;
        double worst_y = x, worst = 0.0, delta = 1.0;
        for (int j = 1; j <= max_j && !found; ++j) {
            delta = std::pow(3.0, -j);
            int level = cap;
            for (int k = 0; k < cap; ++k)
                if (F.resolution(k) <= delta / 3.0) {
                    level = k;
                    break;
                }
            worst = 0.0;
            for (double y : F.net(level, {x - delta, x + delta})) {
                double d = std::abs(f(y) - fx);
                if (d > worst) {
                    worst = d;
                    worst_y = y;
                }
            }
            found = worst <= eps;
        }
        if (!found) {
            out.continuous = false;
            out.eps = eps;
            out.delta = delta;
            out.witness = worst_y;
            out.jump = worst;
            return out;
        }
    }
    return out;
}

}  // namespace fracalc

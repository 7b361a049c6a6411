#include "fracalc/physics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracalc/error.hpp"

namespace fracalc {

namespace {

using boost::math::quadrature::gauss_kronrod;

double gauss(double x, double var) {
    return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

}  // namespace

double diffusion_density(const DiffusionParams& p, double x, double t) {
    double s = p.S(t);
    if (!(s > 0.0)) {
        std::ostringstream os;
        os << "S(" << t << ") = " << s << ", the density is still the initial delta";
        throw Error(Errc::degenerate_time, os.str());
    }
    return gauss(x, s);
}

Moments diffusion_moments(const DiffusionParams& p, double t) {
    double s = p.S(t);
    if (!(s > 0.0)) throw Error(Errc::degenerate_time, "moments need S(t) > 0");
    const double w = 14.0 * std::sqrt(s);
    Moments m;
    m.norm = gauss_kronrod<double, 31>::integrate([s](double x) { return gauss(x, s); }, -w, w, 15, 1e-14);
    m.second =
        gauss_kronrod<double, 31>::integrate([s](double x) { return x * x * gauss(x, s); }, -w, w, 15, 1e-14);
    return m;
}

double diffusion_residual(const DiffusionParams& p, double x, double t, double hx, double tol) {
    const auto& F = p.S.set();
    if (!F.contains(t)) return 0.0;  // both sides vanish off the time set
    const double s = p.S(t);
    if (!(s > 0.0)) throw Error(Errc::degenerate_time, "residual needs S(t) > 0");
    // W depends on t only through S, so the time quotient is taken in the variance
    auto W = [x](double var) {
        if (var > 0.0) return gauss(x, var);
        return x == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    };
    const double w0 = W(s);
    auto dt = quotient_limit(p.S, t, tol, [&](double, double dS) { return W(s + dS) - w0; });
    double dxx = (gauss(x + hx, s) - 2.0 * w0 + gauss(x - hx, s)) / (hx * hx);
    return dt.value - 0.5 * dxx;
}

double friction_velocity(const FrictionParams& p, double x) {
    if (x < p.x0) throw Error(Errc::invalid_spec, "friction velocity needs x >= x0");
    if (p.kappa) return p.v0 - *p.kappa * (p.S(x) - p.S(p.x0));
    return p.v0 - integrate(p.k, p.S, p.x0, x, p.tol).value;
}

double time_of_flight(const FrictionParams& p, double x) {
    if (x < p.x0) throw Error(Errc::invalid_spec, "time of flight needs x >= x0");
    if (x == p.x0) return 0.0;
    const double floor = p.v_floor * p.v0;
    auto v = [&](double s) { return friction_velocity(p, s); };
    if (!(v(x) > floor)) {
        // v is nonincreasing, so bisect for where it first reaches the floor
        double lo = p.x0, hi = x;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
            double mid = 0.5 * (lo + hi);
            (v(mid) > floor ? lo : hi) = mid;
        }
        std::ostringstream os;
        os.precision(17);
        os << "velocity reaches the floor " << floor << " at x = " << hi << " before " << x;
        throw Error(Errc::stall, os.str());
    }
    const double len = x - p.x0;
    const auto& F = p.S.set();
    const double Stot = std::abs(p.S(x) - p.S(p.x0));
    auto inv = [&](double s) { return 1.0 / v(s); };
    // v is monotone: a tile [a,b] lies between (b-a)/v(a) and (b-a)/v(b). Tiles too wide for
    // their share of the budget split at their largest gap, where v is constant.
    struct Tile {
        double a, b;
        int depth;
    };
    std::vector<Tile> stack{{p.x0, x, 0}};
    double t = 0.0;
    while (!stack.empty()) {
        Tile c = stack.back();
        stack.pop_back();
        const double w = c.b - c.a;
        if (!(w > 0.0)) continue;
        double ia = inv(c.a), ib = inv(c.b);
        double share = w / len;
        if (Stot > 0.0) share = std::max(share, std::abs(p.S(c.b) - p.S(c.a)) / Stot);
        if (std::abs(ib - ia) * w <= p.tof_tol * share || c.depth >= 60) {
            t += 0.5 * w * (ia + ib);
            continue;
        }
        auto gs = F.gaps({c.a, c.b}, w / 8.0);
        const Interval* big = nullptr;
        for (const auto& g : gs)
            if (g.lo > c.a || g.hi < c.b)
                if (!big || g.length() > big->length()) big = &g;
        if (!big) {
            // no sizeable gap: v is smooth enough for ordinary quadrature here
            t += gauss_kronrod<double, 15>::integrate(inv, c.a, c.b, 15, 1e-12);
            continue;
        }
        t += big->length() * inv(0.5 * (big->lo + big->hi));
        stack.push_back({c.a, big->lo, c.depth + 1});
        stack.push_back({big->hi, c.b, c.depth + 1});
    }
    return t;
}

}  // namespace fracalc

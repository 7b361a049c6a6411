#include "fracalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "fracalc/calculus.hpp"
#include "fracalc/cantor.hpp"
#include "fracalc/config.hpp"
#include "fracalc/dimension.hpp"
#include "fracalc/error.hpp"
#include "fracalc/io.hpp"
#include "fracalc/mass.hpp"
#include "fracalc/physics.hpp"

namespace fracalc {

double CheckResult::worst_ratio() const {
    double w = 0.0;
    for (const auto& m : measures) {
        if (m.limit > 0.0)
            w = std::max(w, m.value / m.limit);
        else if (m.value > 0.0)
            w = INFINITY;
    }
    return w;
}

std::string CheckResult::summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < measures.size(); ++i) {
        const auto& m = measures[i];
        os << (i ? "; " : "") << m.label << '=' << format_double(m.value) << (m.ok() ? "<=" : ">")
           << format_double(m.limit);
    }
    if (!note.empty()) os << (measures.empty() ? "" : "; ") << note;
    return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;
using Fill = std::function<void(std::vector<Measure>&)>;

// Gamma(1 + ln2/ln3) from an arbitrary-precision evaluation.
constexpr double kGammaReference = 0.89737094067266635484;

CheckResult run(std::string id, std::string name, double time_limit, const Fill& body) {
    CheckResult r;
    r.id = std::move(id);
    r.name = std::move(name);
    auto t0 = Clock::now();
    try {
        body(r.measures);
    } catch (const std::exception& e) {
        r.note = std::string("threw ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (time_limit > 0.0) r.measures.push_back({"seconds", r.seconds, time_limit});
    r.passed = r.note.empty() && std::all_of(r.measures.begin(), r.measures.end(), [](const Measure& m) { return m.ok(); });
    return r;
}

const double kD = cantor_dimension;

SetSpec cantor() { return SetSpec::cantor(); }
SetSpec asym_ifs() { return SetSpec::gap_ifs({0.5, 0.25}, {0.0, 0.75}); }

Staircase cantor_stair() { return Staircase(cantor(), kD); }

// ---- acceptance criteria

void ac1(std::vector<Measure>& m) {
    m.push_back({"|GammaS(1)-1|", std::abs(cantor_staircase_exact(1.0) - 1.0), 1e-12});
    MassOptions opt;
    opt.depth = 8;
    auto e = mass(cantor(), 0.0, 1.0, kD, opt);
    double finest = e.delta_trace.back().first;
    m.push_back({"|finest delta/3^-8-1|", std::abs(finest / std::pow(3.0, -8) - 1.0), 1e-12});
    double num = e.delta_trace.back().second * gamma1p(kD);
    m.push_back({"numeric rel err at 3^-8", std::abs(num - 1.0), 1e-3});
    m.push_back({"numeric staircase rel err",
                 std::abs(Staircase::numeric(cantor(), kD).normalized(1.0) - 1.0), 1e-3});
}

void ac2(std::vector<Measure>& m) {
    const double want = 0.5 / kGammaReference;
    m.push_back({"|Gamma(1+alpha)-reference|", std::abs(gamma1p(kD) - kGammaReference), 1e-12});
    auto r = integrate(FOnF::identity(), cantor_stair(), 0.0, 1.0, 1e-4);
    m.push_back({"bracket miss", std::max({0.0, r.lower - want, want - r.upper}), 0.0});
    m.push_back({"U-L", r.gap, 1e-4});
    m.push_back({"|g(1)-1/(2Gamma)|", std::abs(g_series(1.0) - want), 1e-12});
    double g1 = g_series(1.0), worst = 0.0;
    for (int k = 1; k <= 5; ++k) worst = std::max(worst, std::abs(g_series(std::pow(3.0, -k)) - g1 / std::pow(6.0, k)));
    m.push_back({"max |g(3^-m)-g(1)/6^m|", worst, 1e-10});
}

void ac3(std::vector<Measure>& m) {
    MassOptions opt;
    opt.depth = 8;
    auto r = gamma_dimension(cantor(), 0.0, 1.0, 0.02, opt);
    m.push_back({"|gamma_dim-0.6309|", std::abs(r.gamma_dim - kD), 0.02});
    m.push_back({"|box_dim-0.6309|", std::abs(box_dimension(cantor(), 0.0, 1.0) - kD), 0.03});
}

void ac4(std::vector<Measure>& m) {
    auto K = SetSpec::harmonic();
    auto r = gamma_dimension(K, 0.0, 1.0, 0.02);
    m.push_back({"gamma_dim", r.gamma_dim, 0.15});
    BoxOptions box;
    box.kmax = 12;
    m.push_back({"|box_dim-0.5|", std::abs(box_dimension(K, 0.0, 1.0, box) - 0.5), 0.05});
}

void ac5(std::vector<Measure>& m) {
    auto S = cantor_stair();
    auto chi = FOnF::indicator(cantor());
    std::mt19937_64 rng(20240);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double gapmax = 0.0, err = 0.0;
    for (int i = 0; i < 20; ++i) {
        double x = U(rng), y = U(rng);
        double a = std::min(x, y), b = std::max(x, y);
        auto r = integrate(chi, S, a, b, 1e-4);
        gapmax = std::max(gapmax, r.upper - r.lower);
        err = std::max(err, std::abs(r.value - (S(b) - S(a))));
    }
    m.push_back({"max U-L", gapmax, 0.0});
    m.push_back({"max |value-(S(b)-S(a))|", err, 0.0});
}

void ac6(std::vector<Measure>& m) {
    auto S = cantor_stair();
    const auto C = cantor();
    double e1 = 0.0, ec = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, eoff = 0.0;
    auto p1 = FOnF::staircase_power(S, 1), p2 = FOnF::staircase_power(S, 2), p3 = FOnF::staircase_power(S, 3),
         p4 = FOnF::staircase_power(S, 4);
    auto k = FOnF::constant(2.0);
    for (double x : C.net(6, {0.0, 1.0})) {
        double s = S(x);
        e1 = std::max(e1, std::abs(derivative(p1, S, x, 1e-4).value - 1.0));
        ec = std::max(ec, std::abs(derivative(k, S, x, 1e-4).value));
        e2 = std::max(e2, std::abs(derivative(p2, S, x, 1e-4).value - 2.0 * s));
        e3 = std::max(e3, std::abs(derivative(p3, S, x, 1e-4).value - 3.0 * s * s));
        e4 = std::max(e4, std::abs(derivative(p4, S, x, 1e-4).value - 4.0 * s * s * s));
    }
    for (const auto& g : C.gaps({0.0, 1.0}, 0.99 * std::pow(3.0, -6)))
        eoff = std::max(eoff, std::abs(derivative(p1, S, 0.5 * (g.lo + g.hi)).value));
    m.push_back({"max |D(S)-1| on C", e1, 1e-3});
    m.push_back({"max |D(S)| off C", eoff, 0.0});
    m.push_back({"max |D(const)|", ec, 0.0});
    m.push_back({"max |D(S^2)-2S|", e2, 1e-3});
    m.push_back({"max |D(S^3)-3S^2|", e3, 1e-3});
    m.push_back({"max |D(S^4)-4S^3|", e4, 1e-3});
}

void ac7(std::vector<Measure>& m) {
    auto S = cantor_stair();
    const double s1 = S(1.0);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
        auto Sn = FOnF::staircase_power(S, n);
        FOnF h{[&](double x) { return derivative(Sn, S, x, 1e-4).value; }, Monotone{1}};
        auto r = integrate(h, S, 0.0, 1.0, 5e-4);
        worst = std::max(worst, std::abs(r.value - std::pow(s1, n)));
    }
    m.push_back({"max |int D(S^n) - S(1)^n|", worst, 1e-3});
    std::vector<FOnF> fs{FOnF::constant(1.0), FOnF::staircase_power(S, 1), FOnF::staircase_power(S, 2)};
    double ftc = 0.0;
    for (const auto& f : fs)
        for (double x : cantor().net(5, {0.0, 1.0}))
            ftc = std::max(ftc, std::abs(derivative_of_integral(f, S, x, 1e-3).value - f(x)));
    m.push_back({"max |D(int f) - f chi|", ftc, 1e-3});
}

void ac8(std::vector<Measure>& m) {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double sG = similarity_dimension({0.5, 0.25});
    double ws = 0.0, wt = 0.0, wa = 0.0;
    for (int i = 0; i < 50; ++i) {
        bool ifs = i % 2 == 1;
        SetSpec F = ifs ? asym_ifs() : cantor();
        double alpha = ifs ? sG : kD;
        double x = U(rng), y = U(rng);
        double a = std::min(x, y), b = std::max(x, y);
        double c = a + (b - a) * U(rng);
        double lam = std::exp(std::log(0.2) + U(rng) * std::log(25.0));
        double shift = 4.0 * U(rng) - 2.0;
        auto rep = verify_scaling_translation(F, a, b, alpha, lam, shift);
        ws = std::max(ws, rep.scaling.rel_err);
        wt = std::max(wt, rep.translation.rel_err);
        double whole = mass(F, a, b, alpha).value;
        double parts = mass(F, a, c, alpha).value + mass(F, c, b, alpha).value;
        wa = std::max(wa, compare(parts, whole).rel_err);
    }
    m.push_back({"max scaling rel err", ws, 1e-3});
    m.push_back({"max translation rel err", wt, 1e-3});
    m.push_back({"max additivity rel err", wa, 1e-3});
}

void ac9(std::vector<Measure>& m) {
    DiffusionParams p{cantor_stair()};
    const auto C = cantor();
    auto ts = C.net(4, {0.0, 1.0});
    double en = 0.0, ev = 0.0;
    for (double t : ts) {
        if (t == 0.0) continue;
        auto mo = diffusion_moments(p, t);
        en = std::max(en, std::abs(mo.norm - 1.0));
        ev = std::max(ev, std::abs(mo.second - p.S(t)));
    }
    m.push_back({"max |norm-1|", en, 1e-6});
    m.push_back({"max |<x^2>-S(t)|", ev, 1e-6});
    const double xs[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    double er = 0.0;
    for (int i = 0; i < 20; ++i) er = std::max(er, std::abs(diffusion_residual(p, xs[i % 5], ts[1 + i])));
    m.push_back({"max |residual| over 20 pairs", er, 1e-3});
    auto pb = fit_staircase_power_bounds(8);
    double excess = 0.0;
    for (double t : C.net(8, {0.0, 1.0})) {
        if (t == 0.0) continue;
        double msd = diffusion_moments(p, t).second;
        excess = std::max(excess, msd / (pb.b * std::pow(t, kD)) - 1.0);
    }
    m.push_back({"max <x^2>/(b t^alpha) - 1", excess, 1e-9});
}

void ac10(std::vector<Measure>& m) {
    const double v0 = 2.0, x0 = 0.25, k = 0.5;
    FrictionParams none{Staircase(SetSpec::empty(), 0.5), k, FOnF::constant(k), v0, x0};
    double e_v = 0.0, e_t = 0.0;
    for (double x : {0.25, 0.5, 1.0, 3.0}) {
        e_v = std::max(e_v, std::abs(friction_velocity(none, x) - v0));
        e_t = std::max(e_t, std::abs(time_of_flight(none, x) - (x - x0) / v0));
    }
    m.push_back({"empty: max |v-v0|", e_v, 0.0});
    m.push_back({"empty: max |t-(x-x0)/v0|", e_t, 1e-12});
    FrictionParams full{Staircase(SetSpec::interval(-1e3, 1e3), 1.0), k, FOnF::constant(k), v0, x0};
    double f_v = 0.0, f_t = 0.0;
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        f_v = std::max(f_v, std::abs(friction_velocity(full, x) - (v0 - k * (x - x0))));
        f_t = std::max(f_t, std::abs(time_of_flight(full, x) + std::log(1.0 - k * (x - x0) / v0) / k));
    }
    m.push_back({"full: max |v-(v0-k(x-x0))|", f_v, 1e-12});
    m.push_back({"full: max |t-log form|", f_t, 1e-6});
    FrictionParams cant{cantor_stair(), 1.0, FOnF::constant(1.0), 1.0, 0.0};
    const double want = 1.0 - 1.0 / kGammaReference;
    m.push_back({"cantor: |v(1)-(v0-k/Gamma)|", std::abs(friction_velocity(cant, 1.0) - want), 1e-4});
    cant.kappa.reset();
    m.push_back({"cantor via integral: |v(1)-(v0-k/Gamma)|", std::abs(friction_velocity(cant, 1.0) - want), 1e-4});
}

struct Criterion {
    const char* name;
    double limit;
    void (*body)(std::vector<Measure>&);
};

const Criterion kCriteria[10] = {
    {"Cantor staircase endpoint", 1.0, ac1},
    {"integral of x over the Cantor set", 10.0, ac2},
    {"gamma-dimension of the Cantor set", 30.0, ac3},
    {"harmonic cluster dimensions", 30.0, ac4},
    {"indicator integral equals the staircase rise", 5.0, ac5},
    {"derivative suite on the level-6 net", 0.0, ac6},
    {"fundamental theorem round trips", 0.0, ac7},
    {"scaling, translation and additivity", 0.0, ac8},
    {"fractal-time diffusion", 0.0, ac9},
    {"friction limits and Cantor medium", 0.0, ac10},
};

// ---- properties

template <class F>
double max_over(const std::vector<double>& xs, F f) {
    double w = 0.0;
    for (double x : xs) w = std::max(w, f(x));
    return w;
}

std::vector<SetSpec> corpus() {
    return {cantor(), SetSpec::harmonic(), asym_ifs(), SetSpec::gap_ifs({0.2, 0.3, 0.2}, {0.0, 0.4, 0.8}),
            cantor().scaled(2.0).translated(-0.5)};
}

void p_net_in_f(std::vector<Measure>& m) {
    double bad = 0.0, far = 0.0;
    std::mt19937_64 rng(1);
    for (const auto& F : corpus()) {
        auto h = *F.hull();
        for (int level : {3, 7}) {
            auto pts = F.net(level, h);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (!F.contains(pts[i])) bad += 1;
                if (i && !(pts[i - 1] < pts[i])) bad += 1;
            }
            std::uniform_real_distribution<double> U(h.lo, h.hi);
            for (int t = 0; t < 40; ++t) {
                auto y = F.first_at_or_after(U(rng));
                if (!y) continue;
                auto it = std::lower_bound(pts.begin(), pts.end(), *y);
                double d = INFINITY;
                if (it != pts.end()) d = *it - *y;
                if (it != pts.begin()) d = std::min(d, *y - *(it - 1));
                far = std::max(far, d / F.resolution(level));
            }
        }
    }
    m.push_back({"net points outside F or unsorted", bad, 0.0});
    m.push_back({"max distance to net / resolution", far, 1.0 + 1e-9});
}

void p_gaps(std::vector<Measure>& m) {
    double bad = 0.0;
    Interval I{0.05, 0.95};
    for (const auto& F : corpus()) {
        auto g = F.gaps(I, 1e-3);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].length() < 1e-3) bad += 1;
            if (i && g[i - 1].hi > g[i].lo) bad += 1;
            if (F.intersects({g[i].lo + 1e-12, g[i].hi - 1e-12})) bad += 1;
            // window ends may come back an ulp off after the affine round trip
            if (!(std::abs(g[i].lo - I.lo) <= 1e-12 || F.contains(g[i].lo))) bad += 1;
            if (!(std::abs(g[i].hi - I.hi) <= 1e-12 || F.contains(g[i].hi))) bad += 1;
        }
    }
    m.push_back({"gap violations", bad, 0.0});
}

void p_net_intersects(std::vector<Measure>& m) {
    double bad = 0.0;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const auto& F : corpus())
        for (int i = 0; i < 100; ++i) {
            double a = U(rng), b = a + 0.05 * U(rng);
            if (!F.net(5, {a, b}).empty() && !F.intersects({a, b})) bad += 1;
        }
    m.push_back({"nonempty net without intersection", bad, 0.0});
}

void p_affine(std::vector<Measure>& m) {
    double bad = 0.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 2.0);
    auto C = cantor();
    for (int i = 0; i < 300; ++i) {
        double a = U(rng), b = a + 0.1 * std::abs(U(rng));
        if (C.translated(0.25).intersects({a, b}) != C.intersects({a - 0.25, b - 0.25})) bad += 1;
        if (C.scaled(3.0).intersects({a, b}) != C.intersects({a / 3.0, b / 3.0})) bad += 1;
    }
    m.push_back({"translate/scale mismatches", bad, 0.0});
}

void p_mass_monotone(std::vector<Measure>& m) {
    double bad = 0.0;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::pair<SetSpec, double>> cases{{cantor(), kD}, {asym_ifs(), 0.65}, {SetSpec::harmonic(), 0.4}};
    for (auto& [F, a] : cases)
        for (int t = 0; t < 10; ++t) {
            double x = U(rng), y = U(rng), z = U(rng);
            double p = std::min({x, y, z}), r = std::max({x, y, z}), q = x + y + z - p - r;
            double d1 = 0.3 * U(rng) + 1e-4, d2 = d1 * (0.1 + 0.8 * U(rng));
            double big = coarse_mass(F, p, r, a, d1).value;
            if (coarse_mass(F, p, r, a, d2).value < big * (1 - 1e-9) - 1e-12) bad += 1;
            if (coarse_mass(F, p, q, a, d1).value > big * (1 + 1e-9) + 1e-12) bad += 1;
        }
    m.push_back({"monotonicity violations", bad, 0.0});
}

void p_mass_additive(std::vector<Measure>& m) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double w = 0.0;
    std::vector<std::pair<SetSpec, double>> cases{{cantor(), kD}, {asym_ifs(), similarity_dimension({0.5, 0.25})}};
    for (auto& [F, a] : cases)
        for (int t = 0; t < 6; ++t) {
            double x = U(rng), y = U(rng), z = U(rng);
            double p = std::min({x, y, z}), r = std::max({x, y, z}), q = x + y + z - p - r;
            w = std::max(w, compare(mass(F, p, q, a).value + mass(F, q, r, a).value, mass(F, p, r, a).value).rel_err);
        }
    m.push_back({"max additivity rel err", w, 1e-6});
}

void p_staircase_shape(std::vector<Measure>& m) {
    double flat = 0.0, drop = 0.0;
    std::vector<Staircase> stairs{cantor_stair(), Staircase(asym_ifs(), similarity_dimension({0.5, 0.25}))};
    for (const auto& S : stairs) {
        for (const auto& g : S.set().gaps({0.0, 1.0}, 0.02)) {
            double e = 1e-3 * g.length();
            flat = std::max(flat, std::abs(S(g.hi - e) - S(g.lo + e)));
        }
        double prev = -INFINITY;
        for (int i = 0; i <= 40; ++i) {
            double v = S(i / 40.0);
            drop = std::max(drop, prev - v);
            prev = v;
        }
    }
    m.push_back({"max change across a gap", flat, 1e-6});
    m.push_back({"max decrease", drop, 1e-7});
}

void p_scaling(std::vector<Measure>& m) {
    double w = 0.0;
    for (double lam : {1.0 / 3.0, 2.0, 5.0}) {
        auto r = verify_scaling_translation(cantor(), 0.1, 0.9, kD, lam, 0.7);
        w = std::max({w, r.scaling.rel_err, r.translation.rel_err});
    }
    m.push_back({"max rel err", w, 1e-6});
}

void p_dimension_order(std::vector<Measure>& m) {
    const double tol = 0.02;
    double worst = 0.0;
    std::vector<SetSpec> sets{cantor(), SetSpec::harmonic(), asym_ifs(), SetSpec::interval(0.0, 1.0),
                              SetSpec::finite({0.2, 0.6})};
    for (const auto& F : sets) {
        auto r = dimension_report(F, 0.0, 1.0, tol);
        worst = std::max(worst, r.gamma_dim - tol - r.box_dim);
    }
    m.push_back({"max gamma_dim - tol - box_dim", worst, 0.0});
    double sc = 0.0;
    for (double lam : {0.1, 7.5}) {
        auto r = gamma_dimension(cantor().scaled(lam), 0.0, lam, tol);
        sc = std::max(sc, std::abs(r.gamma_dim - kD));
    }
    m.push_back({"scaled Cantor |gamma_dim-d|", sc, tol});
}

void p_ternary(std::vector<Measure>& m) {
    double bad = 0.0;
    for (double y : {0.1, 0.25, 0.5, 0.7, 0.999}) {
        auto t = ternary(y, 40);
        double prev = 0.0;
        for (int k = 0; k <= 40; ++k) {
            double T = t.truncation(k);
            if (T < prev || T > y + 1e-15) bad += 1;
            prev = T;
        }
        if (std::abs(prev - y) > 1e-15) bad += 1;
    }
    m.push_back({"truncation violations", bad, 0.0});
    double self = 0.0, dec = 0.0;
    double prev = 0.0;
    for (int i = 0; i <= 729; ++i) {
        double x = i / 729.0;
        self = std::max(self, std::abs(cantor_staircase_exact(x / 3.0) - 0.5 * cantor_staircase_exact(x)));
        double v = cantor_staircase_exact(x);
        dec = std::max(dec, prev - v);
        prev = v;
    }
    // x/3 is rounded, and a relative ulp moves a Holder-alpha function by about 1e-10
    m.push_back({"max |GammaS(x/3)-GammaS(x)/2|", self, 2e-10});
    m.push_back({"max decrease of GammaS", dec, 0.0});
    auto pts = cantor().net(6, {0.0, 1.0});
    double inc = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double d = cantor_staircase_exact(pts[i]) - cantor_staircase_exact(pts[i - 1]);
        inc = std::max(inc, std::abs(d - (i % 2 ? 1.0 / 64 : 0.0)));
    }
    m.push_back({"max net increment error", inc, 1e-12});
}

void p_series(std::vector<Measure>& m) {
    m.push_back({"|fixed point g(1)-1/(2Gamma)|", std::abs(g_one_fixed_point() - 0.5 / gamma1p(kD)), 1e-13});
    auto S = cantor_stair();
    double w = 0.0;
    for (double y : {1.0 / 9, 1.0 / 3, 0.4, 0.5, 2.0 / 3, 1.0})
        w = std::max(w, std::abs(integrate(FOnF::identity(), S, 0.0, y, 1e-5).value - g_series(y)));
    m.push_back({"max |g_series-integral|", w, 1e-4});
    double out = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        double x = i / 2000.0;
        auto [lo, hi] = staircase_power_bounds(x);
        double s = S(x);
        out = std::max({out, lo - s, s - hi});
    }
    m.push_back({"max power bound violation", out, 1e-12});
}

void p_integral_algebra(std::vector<Measure>& m) {
    auto S = cantor_stair();
    const double tol = 1e-4;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto f = FOnF::identity();
    auto g = FOnF::staircase_power(S, 2);
    FOnF sq{[](double v) { return v * v; }, Monotone{1}};
    double lin = 0.0, add = 0.0, ord = 0.0;
    for (int t = 0; t < 5; ++t) {
        double x = U(rng), y = U(rng), z = U(rng);
        double a = std::min({x, y, z}), b = std::max({x, y, z}), c = x + y + z - a - b;
        double lam = 4.0 * U(rng) - 2.0;
        double If = integrate(f, S, a, b, tol).value, Ig = integrate(g, S, a, b, tol).value;
        lin = std::max(lin, std::abs(integrate(f * lam + g, S, a, b, tol).value - lam * If - Ig) /
                                (2.0 + std::abs(lam)));
        add = std::max(add, std::abs(If - integrate(f, S, a, c, tol).value - integrate(f, S, c, b, tol).value));
        ord = std::max(ord, integrate(sq, S, a, b, tol).value - If);
    }
    m.push_back({"linearity err / (2+|lambda|)", lin, tol});
    m.push_back({"additivity err", add, 2 * tol});
    m.push_back({"order excess", ord, 2 * tol});
}

void p_derivative_algebra(std::vector<Measure>& m) {
    auto S = cantor_stair();
    auto u = FOnF::staircase_power(S, 1), v = FOnF::staircase_power(S, 2);
    double lin = 0.0, leib = 0.0;
    for (double x : cantor().net(4, {0.0, 1.0})) {
        double du = derivative(u, S, x, 1e-4).value, dv = derivative(v, S, x, 1e-4).value;
        lin = std::max(lin, std::abs(derivative(u * 2.5 + v, S, x, 1e-4).value - 2.5 * du - dv));
        leib = std::max(leib, std::abs(derivative(u * v, S, x, 1e-4).value - du * v(x) - u(x) * dv));
    }
    m.push_back({"linearity err", lin, 1e-3});
    m.push_back({"Leibniz err", leib, 1e-3});
}

void p_fundamental(std::vector<Measure>& m) {
    auto S = cantor_stair();
    double ftc1 = 0.0;
    std::vector<FOnF> fs{FOnF::constant(1.0), FOnF::staircase_power(S, 1), FOnF::staircase_power(S, 2)};
    for (const auto& f : fs)
        for (double x : cantor().net(3, {0.0, 1.0}))
            ftc1 = std::max(ftc1, std::abs(derivative_of_integral(f, S, x).value - f(x)));
    m.push_back({"first theorem err", ftc1, 1e-3});
    double ftc2 = 0.0;
    for (int n = 1; n <= 4; ++n) {
        FOnF h{[&S, n](double x) { return power_rule_derivative(S, n, x); }, Monotone{1}};
        ftc2 = std::max(ftc2, std::abs(integrate(h, S, 0.0, 1.0, 1e-4).value - std::pow(S(1.0), n)));
    }
    m.push_back({"second theorem err", ftc2, 1e-4});
}

void p_parts(std::vector<Measure>& m) {
    auto S = cantor_stair();
    const auto C = cantor();
    const double tol = 1e-4;
    auto chi = FOnF::indicator(C);
    auto s1 = FOnF::staircase_power(S, 1), s2 = FOnF::staircase_power(S, 2);
    auto D = [&S](const FOnF& f) {
        return [f, &S](double x) { return derivative(f, S, x, 1e-5).value; };
    };
    double w1 = 0.0, w2 = 0.0;
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.1, 0.7}}) {
        auto e = *C.extent({a, b});
        FOnF uDv{[&, d = D(chi)](double x) { return s1(x) * d(x); }, Monotone{1}};
        FOnF vDu{[&, d = D(s1)](double x) { return chi(x) * d(x); }, Lipschitz{0.0}};
        double lhs = integrate(uDv, S, a, b, tol).value;
        double rhs = s1(e.hi) - s1(e.lo) - integrate(vDu, S, a, b, tol).value;
        w1 = std::max(w1, std::abs(lhs - rhs));
        FOnF uDv2{[&, d = D(s1)](double x) { return s2(x) * d(x); }, Monotone{1}};
        FOnF vDu2{[&, d = D(s2)](double x) { return s1(x) * d(x); }, Monotone{1}};
        double l2 = integrate(uDv2, S, a, b, tol).value;
        double r2 = s2(b) * s1(b) - s2(a) * s1(a) - integrate(vDu2, S, a, b, tol).value;
        w2 = std::max(w2, std::abs(l2 - r2));
    }
    m.push_back({"parts (S, chi) err", w1, 3 * tol});
    // the inner derivative carries its own 1e-5 tolerance, integrated over a staircase rise near 1.1
    m.push_back({"parts (S^2, S) err", w2, 3 * tol + 2e-3});
}

void p_rolle_mean_const(std::vector<Measure>& m) {
    auto S = cantor_stair();
    const double top = S(1.0);
    FOnF f{[&S, top](double x) { return x <= 0.5 ? S(x) : top - S(x); }, NetSampled{}};
    auto pts = cantor().net(5, {0.0, 1.0});
    double zeros = 0.0, hi = -INFINITY, lo = INFINITY;
    for (double x : pts) {
        double d = derivative(f, S, x).value;
        if (d == 0.0) zeros += 1;
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    m.push_back({"Rolle: zero derivatives on C", zeros, 0.0});
    m.push_back({"Rolle: missing sign", (hi >= 0.0 ? 0.0 : 1.0) + (lo <= 0.0 ? 0.0 : 1.0), 0.0});
    auto s2 = FOnF::staircase_power(S, 2);
    double slope = (s2(1.0) - s2(0.0)) / (S(1.0) - S(0.0));
    hi = -INFINITY;
    lo = INFINITY;
    for (double x : pts) {
        double d = derivative(s2, S, x).value;
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    m.push_back({"mean value: bracket miss", std::max({0.0, slope - hi, lo - slope}), 0.0});
    auto k = FOnF::constant(-2.0);
    double dk = max_over(pts, [&](double x) { return std::abs(derivative(k, S, x).value); });
    m.push_back({"constancy: max |D(const)|", dk, 0.0});
}

void p_continuity(std::vector<Measure>& m) {
    const auto C = cantor();
    auto chi = FOnF::indicator(C);
    FOnF xchi{[C](double x) { return C.contains(x) ? x : 0.0; }, NetSampled{}};
    double fails = 0.0;
    for (double x : {0.0, 0.25, 1.0 / 3.0, 1.0})
        fails += !check_f_continuity(chi, C, x).continuous + !check_f_continuity(xchi, C, x).continuous;
    m.push_back({"continuous examples flagged", fails, 0.0});
    FOnF step{[](double x) { return x >= 0.25 ? 1.0 : 0.0; }, NetSampled{}};
    auto r = check_f_continuity(step, C, 0.25);
    m.push_back({"step not flagged", (!r.continuous && r.witness) ? 0.0 : 1.0, 0.0});
}

void p_physics(std::vector<Measure>& m) {
    FrictionParams p{cantor_stair(), 0.7, FOnF::constant(0.7), 1.0, 0.0};
    double rise = 0.0, prev = INFINITY;
    for (int i = 0; i <= 200; ++i) {
        double v = friction_velocity(p, i / 200.0);
        rise = std::max(rise, v - prev);
        prev = v;
    }
    m.push_back({"velocity increase", rise, 0.0});
    double gap = 0.0;
    for (const auto& g : cantor().gaps({0.0, 1.0}, 1e-3)) {
        double e = 1e-3 * g.length();
        gap = std::max(gap, std::abs(friction_velocity(p, g.lo + e) - friction_velocity(p, g.hi - e)));
    }
    m.push_back({"velocity change across gaps", gap, 0.0});
    DiffusionParams d{cantor_stair()};
    double var = 0.0;
    for (double t : {0.1, 0.3, 0.7, 1.0}) var = std::max(var, std::abs(diffusion_moments(d, t).second - d.S(t)));
    m.push_back({"variance vs staircase", var, 1e-6});
    p.kappa = 0.2;
    double back = 0.0, sub = 0.0, tp = 0.0;
    for (double x : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        double t = time_of_flight(p, x);
        back = std::max(back, tp - t);
        sub = std::max(sub, x / p.v0 - t);
        tp = t;
    }
    m.push_back({"time of flight decrease", back, 0.0});
    m.push_back({"time below constant-velocity bound", sub, 1e-9});
}

struct Property {
    const char* id;
    const char* name;
    void (*body)(std::vector<Measure>&);
};

const Property kProperties[] = {
    {"sets-1", "net points lie in F and are dense to resolution", p_net_in_f},
    {"sets-2", "gaps are disjoint, F-free and maximal", p_gaps},
    {"sets-3", "nonempty net implies intersection", p_net_intersects},
    {"sets-4", "translation and scaling commute with queries", p_affine},
    {"mass-1", "coarse mass monotone in delta and endpoints", p_mass_monotone},
    {"mass-2", "mass additive over a split point", p_mass_additive},
    {"mass-3", "staircase flat on gaps and nondecreasing", p_staircase_shape},
    {"mass-4", "scaling and translation identities", p_scaling},
    {"dim-1", "gamma-dimension at most box dimension, scale invariant", p_dimension_order},
    {"cantor-1", "ternary truncations and exact staircase", p_ternary},
    {"cantor-2", "series, fixed point and power bounds", p_series},
    {"calc-1", "integral linear, additive and ordered", p_integral_algebra},
    {"calc-2", "derivative linear and Leibniz", p_derivative_algebra},
    {"calc-3", "fundamental theorems", p_fundamental},
    {"calc-4", "integration by parts", p_parts},
    {"calc-5", "Rolle analogue, mean value, constancy", p_rolle_mean_const},
    {"calc-6", "F-continuity examples", p_continuity},
    {"phys-1", "friction and diffusion invariants", p_physics},
};

}  // namespace

CheckResult run_acceptance_criterion(int k) {
    if (k < 1 || k > 10) throw Error(Errc::usage, "acceptance criteria are numbered 1 to 10");
    const auto& c = kCriteria[k - 1];
    return run("AC" + std::to_string(k), c.name, c.limit, c.body);
}

std::vector<CheckResult> run_acceptance() {
    std::vector<CheckResult> out;
    for (int k = 1; k <= 10; ++k) out.push_back(run_acceptance_criterion(k));
    return out;
}

std::vector<CheckResult> run_properties() {
    std::vector<CheckResult> out;
    for (const auto& p : kProperties) out.push_back(run(p.id, p.name, 0.0, p.body));
    return out;
}

}  // namespace fracalc

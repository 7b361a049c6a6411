#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracalc/calculus.hpp"
#include "fracalc/cantor.hpp"
#include "fracalc/config.hpp"
#include "fracalc/dimension.hpp"
#include "fracalc/error.hpp"
#include "fracalc/io.hpp"
#include "fracalc/mass.hpp"
#include "fracalc/physics.hpp"
#include "fracalc/verify.hpp"

using namespace fracalc;

namespace {

struct Common {
    std::string set = "cantor";
    std::string alpha = "auto";
    std::vector<double> range;
    int samples = 0;
    double tol = 0.0;
    std::string out;
    std::string format = "csv";
};

[[noreturn]] void usage(const std::string& msg) { throw Error(Errc::usage, msg); }

void add_common(CLI::App* c, Common& o, bool with_alpha = true) {
    c->add_option("--set", o.set, "cantor, harmonic, unit, empty, inline JSON or a JSON file")->capture_default_str();
    if (with_alpha) c->add_option("--alpha", o.alpha, "order in (0,1], or auto")->capture_default_str();
    c->add_option("--range", o.range, "interval a b")->expected(2);
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

Interval range_of(const Common& o, const SetSpec& F) {
    if (!o.range.empty()) {
        if (!(o.range[0] < o.range[1])) usage("--range needs a < b");
        return {o.range[0], o.range[1]};
    }
    if (auto h = F.hull(); h && h->length() > 0.0) return *h;
    return {0.0, 1.0};
}

double resolve_alpha(const Common& o, const SetSpec& F, Interval I) {
    if (o.alpha == "auto") return resolve_auto_alpha(F, I.lo, I.hi).alpha;
    double a = 0.0;
    std::size_t used = 0;
    try {
        a = std::stod(o.alpha, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != o.alpha.size() || !(a > 0.0 && a <= 1.0)) usage("--alpha must be a number in (0,1] or auto");
    return a;
}

std::vector<double> linspace(Interval I, int n) {
    if (n < 2) usage("--samples must be at least 2");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = i + 1 == n ? I.hi : I.lo + (I.hi - I.lo) * i / (n - 1);
    return xs;
}

// 1 | <number> | x | x^2 | chi | S | S^<n>
FOnF parse_f(const std::string& s, const Staircase& S, Interval I) {
    if (s == "x") return FOnF::identity();
    if (s == "x^2") {
        double L = 2.0 * std::max(std::abs(I.lo), std::abs(I.hi));
        return FOnF{[](double x) { return x * x; }, Lipschitz{L}};
    }
    if (s == "chi") return FOnF::indicator(S.set());
    if (s == "S") return FOnF::staircase_power(S, 1);
    if (s.rfind("S^", 0) == 0) {
        try {
            std::size_t used = 0;
            int n = std::stoi(s.substr(2), &used);
            if (used == s.size() - 2 && n >= 0) return FOnF::staircase_power(S, n);
        } catch (const std::exception&) {
        }
        usage("bad power in --f " + s);
    }
    try {
        std::size_t used = 0;
        double c = std::stod(s, &used);
        if (used == s.size()) return FOnF::constant(c);
    } catch (const std::exception&) {
    }
    usage("unknown --f \"" + s + "\": use a number, x, x^2, chi, S or S^n");
}

void emit(const Common& o, const Table& t) {
    if (o.out.empty()) {
        o.format == "json" ? write_json(std::cout, t) : write_csv(std::cout, t);
        return;
    }
    std::ofstream f(o.out);
    if (!f) usage("cannot write \"" + o.out + "\"");
    o.format == "json" ? write_json(f, t) : write_csv(f, t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calculus on fractal subsets of the real line"};
    app.require_subcommand(1);
    Common o;

    auto* stair = app.add_subcommand("staircase", "integral staircase S and Gamma(alpha+1) S on a grid");
    add_common(stair, o);
    o.samples = 0;
    double origin = 0.0;
    stair->add_option("--samples", o.samples, "grid points (default 729)");
    stair->add_option("--origin", origin, "staircase origin")->capture_default_str();

    auto* mass_cmd = app.add_subcommand("mass", "mass function over [a,b]");
    add_common(mass_cmd, o);
    bool trace = false;
    int depth = 8;
    mass_cmd->add_flag("--trace", trace, "emit the (delta, coarse mass) ladder");
    mass_cmd->add_option("--depth", depth, "ladder depth")->capture_default_str();

    auto* dim = app.add_subcommand("dimension", "gamma and box dimension");
    add_common(dim, o, false);
    std::string dim_trace;
    int kmax = 12;
    dim->add_option("--trace", dim_trace, "alpha or box")->check(CLI::IsMember({"alpha", "box"}));
    dim->add_option("--tol", o.tol, "bisection tolerance (default 0.02)");
    dim->add_option("--depth", depth, "ladder depth")->capture_default_str();
    dim->add_option("--kmax", kmax, "finest box level, delta = 3^-kmax")->capture_default_str();

    auto* integ = app.add_subcommand("integrate", "F^alpha integral with certified bracket");
    add_common(integ, o);
    std::string fspec = "1";
    integ->add_option("--f", fspec, "1, number, x, x^2, chi, S or S^n")->capture_default_str();
    integ->add_option("--tol", o.tol, "target U-L (default 1e-4)");
    integ->add_flag("--trace", trace, "emit the refinement trace");

    auto* diff = app.add_subcommand("differentiate", "F^alpha derivative at net points or a grid");
    add_common(diff, o);
    int level = 6;
    diff->add_option("--f", fspec, "1, number, x, x^2, chi, S or S^n")->capture_default_str();
    diff->add_option("--tol", o.tol, "derivative tolerance (default 1e-3)");
    diff->add_option("--level", level, "net level of the evaluation points")->capture_default_str();
    diff->add_option("--samples", o.samples, "use a uniform grid instead of net points");

    auto* cg = app.add_subcommand("cantor-g", "closed-form integral of x over the Cantor set from 0");
    add_common(cg, o, false);
    cg->add_option("--samples", o.samples, "grid points (default 729)");

    auto* dif = app.add_subcommand("diffusion", "density in fractal time, W(x,t)");
    add_common(dif, o);
    std::vector<double> times{1.0};
    dif->add_option("--t", times, "times")->delimiter(',')->capture_default_str();
    dif->add_option("--samples", o.samples, "x grid points (default 201)");

    auto* fr = app.add_subcommand("friction", "velocity and time of flight through a fractal medium");
    add_common(fr, o);
    std::string params;
    std::optional<double> kappa;
    double v0 = 1.0, x0 = 0.0;
    fr->add_option("--params", params, "JSON parameter file or inline JSON");
    fr->add_option("--kappa", kappa, "uniform friction coefficient on F");
    fr->add_option("--v0", v0)->capture_default_str();
    fr->add_option("--x0", x0)->capture_default_str();
    fr->add_option("--samples", o.samples, "grid points (default 101)");

    auto* ver = app.add_subcommand("verify", "run the invariant suite and acceptance checks");
    ver->add_option("--out", o.out, "output file (default stdout)");
    ver->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bool properties_only = false;
    ver->add_flag("--properties-only", properties_only, "skip the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*ver) {
            auto res = run_properties();
            if (!properties_only)
                for (auto& r : run_acceptance()) res.push_back(std::move(r));
            Table t{{"id", "name", "status", "seconds", "worst_ratio", "residuals"}, {}};
            int failed = 0;
            for (const auto& r : res) {
                failed += !r.passed;
                t.add({r.id, r.name, std::string(r.passed ? "PASS" : "FAIL"), r.seconds, r.worst_ratio(), r.summary()});
            }
            emit(o, t);
            std::fprintf(stderr, "%zu checks, %d failed\n", res.size(), failed);
            return failed ? 2 : 0;
        }

        const SetSpec F = parse_set_arg(o.set);
        const Interval I = range_of(o, F);

        if (*stair) {
            const double alpha = resolve_alpha(o, F, I);
            Staircase S(F, alpha, origin);
            Table t{{"x", "S", "gamma_S"}, {}};
            for (double x : linspace(I, o.samples ? o.samples : 729)) t.add({x, S(x), S.normalized(x)});
            emit(o, t);
        } else if (*mass_cmd) {
            const double alpha = resolve_alpha(o, F, I);
            MassOptions opt;
            opt.depth = std::min(depth, max_level());
            auto m = mass(F, I.lo, I.hi, alpha, opt);
            Table t;
            if (trace) {
                t.columns = {"delta", "mass"};
                for (auto [d, v] : m.delta_trace) t.add({d, v});
            } else {
                t.columns = {"a", "b", "alpha", "value", "infinite", "verdict", "upper_bound"};
                t.add({I.lo, I.hi, alpha, m.value, (long long)m.infinite, std::string(verdict_name(m.verdict)),
                       (long long)m.upper_bound});
            }
            emit(o, t);
        } else if (*dim) {
            MassOptions opt;
            opt.depth = std::min(depth, max_level());
            BoxOptions box;
            box.kmax = std::min(kmax, max_level());
            if (box.kmax <= box.kmin) usage("--kmax must exceed " + std::to_string(box.kmin));
            auto r = dimension_report(F, I.lo, I.hi, o.tol > 0 ? o.tol : 0.02, opt, box);
            Table t;
            if (dim_trace == "alpha") {
                t.columns = {"alpha", "verdict", "mass"};
                for (const auto& p : r.alpha_trace) t.add({p.alpha, std::string(verdict_name(p.verdict)), p.value});
            } else if (dim_trace == "box") {
                t.columns = {"delta", "count"};
                for (const auto& b : r.box_trace) t.add({b.delta, (long long)b.count});
            } else {
                t.columns = {"gamma_dim", "box_dim", "bracket_lo", "bracket_hi", "status", "note"};
                t.add({r.gamma_dim, r.box_dim, r.bracket.first, r.bracket.second,
                       std::string(r.status == DimensionStatus::ok ? "ok" : "inconclusive"), r.note});
            }
            emit(o, t);
        } else if (*integ) {
            const double alpha = resolve_alpha(o, F, I);
            Staircase S(F, alpha);
            auto r = integrate(parse_f(fspec, S, I), S, I.lo, I.hi, o.tol > 0 ? o.tol : 1e-4);
            Table t;
            if (trace) {
                t.columns = {"depth", "lower", "upper"};
                for (const auto& row : r.trace) t.add({(long long)row.depth, row.lower, row.upper});
            } else {
                t.columns = {"lower", "upper", "value", "gap", "refinement_depth", "components", "alpha"};
                t.add({r.lower, r.upper, r.value, r.gap, (long long)r.refinement_depth, (long long)r.components, alpha});
            }
            emit(o, t);
        } else if (*diff) {
            const double alpha = resolve_alpha(o, F, I);
            Staircase S(F, alpha);
            auto f = parse_f(fspec, S, I);
            auto xs = o.samples ? linspace(I, o.samples) : F.net(std::min(level, max_level()), I);
            Table t{{"x", "value", "side", "residual", "level"}, {}};
            for (double x : xs) {
                auto d = derivative(f, S, x, o.tol > 0 ? o.tol : 1e-3);
                t.add({x, d.value, std::string(side_name(d.side)), d.residual, (long long)d.level});
            }
            emit(o, t);
        } else if (*cg) {
            Table t{{"x", "g"}, {}};
            for (double x : linspace(I, o.samples ? o.samples : 729)) t.add({x, g_series(x)});
            emit(o, t);
        } else if (*dif) {
            Interval X = o.range.empty() ? Interval{-3.0, 3.0} : I;
            Interval T = F.hull() ? *F.hull() : Interval{0.0, 1.0};
            const double alpha = resolve_alpha(o, F, T);
            DiffusionParams p{Staircase(F, alpha)};
            Table t{{"x", "t", "W"}, {}};
            auto xs = linspace(X, o.samples ? o.samples : 201);
            for (double tt : times)
                for (double x : xs) t.add({x, tt, diffusion_density(p, x, tt)});
            emit(o, t);
        } else if (*fr) {
            FrictionConfig c;
            if (!params.empty()) {
                auto first = params.find_first_not_of(" \t\n");
                c = parse_friction_json(first != std::string::npos && params[first] == '{' ? params
                                                                                           : read_text_file(params));
            } else {
                if (!kappa) usage("friction needs --params or --kappa");
                c.set = F;
                c.kappa = kappa;
                c.v0 = v0;
                c.x0 = x0;
                if (o.alpha != "auto") c.alpha = resolve_alpha(o, F, I);
            }
            Interval X = o.range.empty() ? Interval{c.x0, c.x0 + 1.0} : I;
            double alpha = c.alpha ? *c.alpha : 0.0;
            if (!c.alpha) {
                auto h = c.set.hull();
                // an empty medium has no dimension; any order gives the frictionless motion
                alpha = c.set.is_empty() ? 1.0 : resolve_auto_alpha(c.set, h->lo, h->hi).alpha;
            } else if (!(alpha > 0.0 && alpha <= 1.0)) {
                usage("alpha must lie in (0,1]");
            }
            FrictionParams p{Staircase(c.set, alpha), c.kappa,
                             c.kappa ? FOnF::constant(*c.kappa) : FOnF::tabulated(c.table_x, c.table_k), c.v0, c.x0};
            Table t{{"x", "v", "t_flight"}, {}};
            std::string stalled;
            for (double x : linspace(X, o.samples ? o.samples : 101)) {
                double tf = INFINITY;
                if (stalled.empty()) {
                    try {
                        tf = time_of_flight(p, x);
                    } catch (const Error& e) {
                        if (e.code() != Errc::stall) throw;
                        stalled = e.what();
                    }
                }
                t.add({x, friction_velocity(p, x), tf});
            }
            emit(o, t);
            if (!stalled.empty()) std::fprintf(stderr, "%s\n", stalled.c_str());
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

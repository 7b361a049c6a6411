#include "fracalc/cantor.hpp"

#include <cmath>
#include <cstdint>

#include "detail/base_sets.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"
#include "fracalc/mass.hpp"

namespace fracalc {

__extension__ typedef unsigned __int128 u128;

double TernaryExpansion::truncation(int k) const {
    double t = 0.0, w = 1.0;
    for (int i = 0; i < k && i < static_cast<int>(digits.size()); ++i) {
        w /= 3.0;
        t += digits[i] * w;
    }
    return t;
}

TernaryExpansion ternary(double y, int n) {
    if (!(y >= 0.0 && y <= 1.0)) throw Error(Errc::invalid_spec, "ternary expansion needs 0 <= y <= 1");
    if (n < 0) throw Error(Errc::invalid_spec, "digit count must be >= 0");
    TernaryExpansion e;
    e.digits.assign(static_cast<std::size_t>(n), 0);
    if (y == 1.0) {
        e.digits.assign(static_cast<std::size_t>(n), 2);
        return e;
    }
    // triadic rationals k / 3^N terminate
    for (int N = 0; N <= 30; ++N) {
        double p = detail::pow3(N);
        double k = std::nearbyint(y * p);
        if (k / p == y) {
            auto kk = static_cast<std::uint64_t>(k);
            for (int i = N; i >= 1; --i) {
                if (i <= n) e.digits[i - 1] = static_cast<int>(kk % 3);
                kk /= 3;
            }
            return e;
        }
    }
    int ex = 0;
    double m = std::frexp(y, &ex);
    auto M = static_cast<std::uint64_t>(std::ldexp(m, 53));
    int s = 53 - ex;  // y = M / 2^s exactly
    if (s <= 125) {
        u128 r = M;
        for (int i = 0; i < n; ++i) {
            r *= 3;
            auto d = static_cast<int>(r >> s);
            r -= static_cast<u128>(d) << s;
            e.digits[i] = d;
        }
        return e;
    }
    // below 2^-72 the leading digits are zero anyway
    long double r = y;
    for (int i = 0; i < n; ++i) {
        r *= 3.0L;
        int d = r >= 2.0L ? 2 : (r >= 1.0L ? 1 : 0);
        r -= d;
        e.digits[i] = d;
    }
    return e;
}

double cantor_staircase_exact(double x) {
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    auto t = ternary(x, 64);
    double v = 0.0, w = 1.0;
    for (int d : t.digits) {
        w *= 0.5;
        if (d == 1) return v + w;
        if (d == 2) v += w;
    }
    return v;
}

double g_series(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw Error(Errc::invalid_spec, "g_series needs 0 <= y <= 1");
    auto t = ternary(y, 64);
    const double G = gamma1p(cantor_dimension);
    double sum = 0.0, T = 0.0, p3 = 1.0, p2 = 1.0, p6 = 1.0;
    for (int d : t.digits) {
        p2 *= 2.0;
        p6 *= 6.0;
        if (d != 0) sum += T / p2 + 0.5 / p6;
        if (d == 1) break;
        p3 *= 3.0;
        T += d / p3;
    }
    return sum / G;
}

double g_one_fixed_point() {
    // g(1) = sum_n [T_{n-1}(1) / (Gamma 2^n) + g(1) / 6^n]
    double A = 0.0, B = 0.0, T = 0.0, p2 = 1.0, p3 = 1.0, p6 = 1.0;
    for (int n = 1; n <= 64; ++n) {
        p2 *= 2.0;
        p6 *= 6.0;
        A += T / p2;
        B += 1.0 / p6;
        p3 *= 3.0;
        T += 2.0 / p3;
    }
    return A / (gamma1p(cantor_dimension) * (1.0 - B));
}

double power_rule_derivative(const Staircase& S, int n, double x) {
    if (n < 1) throw Error(Errc::invalid_spec, "power rule derivative needs n >= 1");
    if (!S.set().contains(x)) return 0.0;
    return n * std::pow(S(x), n - 1);
}

double power_rule_integral(const Staircase& S, int n, double x) {
    if (n < 0) throw Error(Errc::invalid_spec, "power rule integral needs n >= 0");
    return std::pow(S(x), n + 1) / (n + 1);
}

PowerBounds fit_staircase_power_bounds(int level) {
    auto pts = SetSpec::cantor().net(level, {0.0, 1.0});
    const double G = gamma1p(cantor_dimension);
    PowerBounds pb{INFINITY, 0.0};
    for (double x : pts) {
        if (x <= 0.0) continue;
        double r = cantor_staircase_exact(x) / std::pow(x, cantor_dimension);
        pb.a = std::min(pb.a, r);
        pb.b = std::max(pb.b, r);
    }
    pb.a /= G;
    pb.b /= G;
    return pb;
}

std::pair<double, double> staircase_power_bounds(double x) {
    if (!(x > 0.0 && x <= 1.0)) throw Error(Errc::invalid_spec, "power bounds need 0 < x <= 1");
    static const PowerBounds pb = fit_staircase_power_bounds(8);
    double xa = std::pow(x, cantor_dimension);
    return {pb.a * xa, pb.b * xa};
}

}  // namespace fracalc

#pragma once

// Reference values computed independently of the library.

#include <cmath>
#include <cstdint>

namespace oracle {

// ln2/ln3 and Gamma(1 + ln2/ln3) from an arbitrary-precision evaluation.
inline constexpr double kAlpha = 0.63092975357145743710;
inline constexpr double kGamma = 0.89737094067266635484;
inline constexpr double kInvGamma = 1.1143663725620569284;
inline constexpr double kHalfInvGamma = 0.55718318628102846422;

// Gamma(1 + a) at a = 0.1, 0.3, 0.5, 0.75, 1 from an arbitrary-precision evaluation.
inline constexpr double kGammaTable[5][2] = {{0.1, 0.95135076986687314782},
                                             {0.3, 0.89747069630627718175},
                                             {0.5, 0.88622692545275801365},
                                             {0.75, 0.91906252684888323385},
                                             {1.0, 1.0}};

// Cantor function at the rational p/q (0 <= p <= q) by base-3 long division.
inline double cantor_function(std::int64_t p, std::int64_t q) {
    if (p >= q) return 1.0;
    double v = 0.0, w = 1.0;
    std::int64_t r = p;
    for (int k = 0; k < 62; ++k) {
        r *= 3;
        std::int64_t d = r / q;
        r -= d * q;
        w *= 0.5;
        if (d == 1) return v + w;  // the staircase is flat past the first digit 1
        if (d == 2) v += w;
        if (r == 0) break;
    }
    return v;
}

// Cantor function at a double: exact when x is k / 3^n for n <= 30, else by 40 long-double digits.
inline double cantor_function_real(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    std::int64_t q = 1;
    for (int n = 0; n <= 30; ++n, q *= 3) {
        double k = std::nearbyint(x * static_cast<double>(q));
        if (k / static_cast<double>(q) == x) return cantor_function(static_cast<std::int64_t>(k), q);
    }
    long double r = x, v = 0.0L, w = 1.0L;
    for (int i = 0; i < 40; ++i) {
        r *= 3.0L;
        int d = r >= 2.0L ? 2 : (r >= 1.0L ? 1 : 0);
        r -= d;
        w *= 0.5L;
        if (d == 1) return static_cast<double>(v + w);
        if (d == 2) v += w;
    }
    return static_cast<double>(v);
}

// Integral of x^n against the Cantor measure (total mass 1) over [0, y], by recursion on the
// construction pieces. Whole pieces use moments obtained from the symmetry of each piece.
inline double cantor_moment_piece(double lo, double w, double mass, int n) {
    // E[x^n] over a piece: expand (lo + w u)^n with the moments of the standard Cantor measure
    static const double mu[5] = {1.0, 0.5, 3.0 / 8.0, 5.0 / 16.0, 87.0 / 320.0};
    double s = 0.0, binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        s += binom * std::pow(lo, n - k) * std::pow(w, k) * mu[k];
        binom = binom * (n - k) / (k + 1);
    }
    return mass * s;
}

// Piece ends are tracked in long double so a double y just below a piece end is resolved.
inline double cantor_moment(double y, int n, long double lo = 0.0L, long double w = 1.0L, double mass = 1.0,
                            int depth = 0) {
    const long double Y = y;
    if (lo > Y) return 0.0;
    if (lo + w <= Y) return cantor_moment_piece(static_cast<double>(lo), static_cast<double>(w), mass, n);
    if (depth > 45) return 0.0;
    long double c = w / 3.0L;
    return cantor_moment(y, n, lo, c, 0.5 * mass, depth + 1) +
           cantor_moment(y, n, lo + 2.0L * c, c, 0.5 * mass, depth + 1);
}

}  // namespace oracle

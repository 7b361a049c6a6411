#pragma once

namespace fracalc {

// Cap on net levels and ladder depths. Read once from FRACTAL_CALC_MAX_LEVEL.
int max_level();

// Gamma(alpha + 1), the normalisation shared by every mass formula.
double gamma1p(double alpha);

// ln 2 / ln 3
inline constexpr double cantor_dimension = 0.63092975357145743710;

}  // namespace fracalc

#pragma once

namespace spreadopt {

/// Standard normal CDF, accurate to a few ulps over the whole real line
/// (rational erf/erfc approximation, no libm erf dependency so results are
/// bit-stable across platforms). Throws std::domain_error on non-finite input.
double norm_cdf(double x);

/// Inverse of norm_cdf on (0, 1), relative accuracy about 1e-15.
/// Throws std::domain_error for p outside the open interval.
double norm_quantile(double p);

}  // namespace spreadopt

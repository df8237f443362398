#pragma once

#include <istream>

#include "spreadopt/grid.hpp"

namespace spreadopt {

/// Parses a sweep configuration in a line-based key-value format:
///
///   # comment
///   strikes    = 0, 1, 2, 5, 10, 20
///   rhos       = 0.80, 0.85, 0.90, 0.95, 0.999
///   maturities = 0.1, 0.2, 0.3, 0.4, 0.5
///   s1 = 100
///   s2 = 100
///   sigma1 = 0.3
///   sigma2 = 0.2
///   r = 0
///   pairs = 1000000
///   seed = 42
///   antithetic = true
///   batch_size = 65536
///   reuse_draws = true
///
/// (one `key = value` or `key = v1, v2, ...` per line). Keys not present keep
/// the defaults of default_grid_spec(). Unknown keys or malformed values
/// throw std::domain_error naming the offending line.
GridSpec parse_grid_config(std::istream& in);

}  // namespace spreadopt

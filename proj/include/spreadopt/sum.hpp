#pragma once

#include <cstddef>
#include <span>

namespace spreadopt {

/// Pairwise (tree) summation. Deterministic for a fixed input order and
/// length; rounding error grows like log2(n) instead of n.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 32) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace spreadopt

#pragma once

#include <array>
#include <cstdint>

namespace spreadopt {

/// Philox 4x32-10 counter-based block generator. Stateless: the output is a
/// pure function of (seed, stream, counter), so any draw can be produced at
/// random access from any thread.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter);

/// Maps 64 random bits to a double strictly inside (0, 1).
double uniform_from_bits(std::uint64_t bits);

struct NormalPair {
    double w;
    double z;
};

/// Two independent standard normal variates from block (seed, stream, index),
/// via the inverse-CDF transform (monotone in the uniforms, so negating the
/// result is the exact antithetic counterpart).
NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace spreadopt

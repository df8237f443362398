#include "spreadopt/rng.hpp"

#include "spreadopt/normal.hpp"

namespace spreadopt {

namespace {

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t (&x)[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(philox_m0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(philox_m1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t y1 = x[1];
    const std::uint32_t y3 = x[3];
    x[0] = hi1 ^ y1 ^ k0;
    x[1] = lo1;
    x[2] = hi0 ^ y3 ^ k1;
    x[3] = lo0;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter) {
    std::uint32_t x[4] = {
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        philox_round(x, k0, k1);
        k0 += philox_w0;
        k1 += philox_w1;
    }
    return {x[0], x[1], x[2], x[3]};
}

double uniform_from_bits(std::uint64_t bits) {
    // (k + 1/2) * 2^-52 for the 52 high bits k: every value is exactly
    // representable and strictly inside (0, 1).
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto block = philox4x32(seed, stream, index);
    const std::uint64_t bits_w =
        static_cast<std::uint64_t>(block[0]) | (static_cast<std::uint64_t>(block[1]) << 32);
    const std::uint64_t bits_z =
        static_cast<std::uint64_t>(block[2]) | (static_cast<std::uint64_t>(block[3]) << 32);
    return {norm_quantile(uniform_from_bits(bits_w)),
            norm_quantile(uniform_from_bits(bits_z))};
}

}  // namespace spreadopt

#pragma once

#include <cstdint>
#include <random>

namespace wolb {

/// Default seed recorded in every report; override per call for different draws.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Seeded uniform generator with a platform-independent [0,1) mapping.
/// std::uniform_real_distribution is implementation-defined, so the engine
/// output is mapped to doubles by hand to keep reports byte-reproducible.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0,1), 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1,1].
    double symmetric() { return 2.0 * unit() - 1.0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace wolb

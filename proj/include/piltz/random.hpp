#pragma once

#include <cstdint>
#include <random>

namespace piltz {

/// Uniform in [0, 1) from the top 53 bits. std::uniform_real_distribution
/// is implementation-defined, which would tie sampled outputs to the
/// standard library in use.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace piltz

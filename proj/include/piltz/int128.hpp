#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "piltz/dd.hpp"

namespace piltz {

std::string u128_to_string(u128 v);
/// Decimal digits only; throws DomainError on anything else or on overflow.
u128 u128_from_string(std::string_view s);

/// floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

/// 64-bit FNV-1a, used for payload checksums and config hashes.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace piltz

#include "piltz/int128.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "piltz/error.hpp"

namespace piltz {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 u128_from_string(std::string_view s) {
    if (s.empty()) throw DomainError("empty integer literal");
    constexpr u128 kMax = ~static_cast<u128>(0);
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw DomainError("invalid integer literal: " + std::string(s));
        auto d = static_cast<unsigned>(c - '0');
        if (v > (kMax - d) / 10) throw OverflowError("integer literal exceeds 128 bits");
        v = v * 10 + d;
    }
    return v;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace piltz

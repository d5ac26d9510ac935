#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "piltz/dd.hpp"

namespace piltz {

inline constexpr std::size_t kDefaultBlockSize = std::size_t{1} << 20;

/// Exact d_k values on [lo, hi): values[i] = d_k(lo + i).
struct DivisorBlock {
    int k = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> values;

    std::uint64_t at(std::uint64_t n) const { return values.at(n - lo); }
    u128 sum() const;
};

/// binomial(a + k - 1, k - 1) = d_k(p^a); throws OverflowError past 64 bits.
std::uint64_t prime_power_count(int k, unsigned a);

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Segmented multiplicative sieve for d_k. Holds the base primes up to
/// sqrt(max_hi); every segment below max_hi can then be factored by
/// trial-sieving alone, with a leftover cofactor > 1 necessarily prime.
class DivisorSieve {
public:
    struct Workspace {
        std::vector<std::uint64_t> part;
        std::vector<std::uint8_t> exps;
    };

    DivisorSieve(int k, std::uint64_t max_hi, std::size_t block_size = kDefaultBlockSize);

    int k() const { return k_; }
    std::uint64_t max_hi() const { return max_hi_; }
    std::size_t block_size() const { return block_size_; }

    DivisorBlock block(std::uint64_t lo, std::uint64_t hi) const;

    /// Writes d_k(lo..hi-1) into out[0 .. hi-lo). Thread-safe given a
    /// per-thread workspace.
    void fill(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out, Workspace& ws) const;

    /// Sum of d_k over [lo, hi), sieved in block_size pieces.
    u128 range_sum(std::uint64_t lo, std::uint64_t hi, Workspace& ws) const;

private:
    void check_range(std::uint64_t lo, std::uint64_t hi) const;

    int k_;
    std::uint64_t max_hi_;
    std::size_t block_size_;
    std::vector<std::uint32_t> primes_;
    std::array<std::uint64_t, 64> binom_{};
    std::array<bool, 64> binom_overflow_{};
};

/// One-off d_k block with its own sieve; prefer DivisorSieve for repeated use.
DivisorBlock divisor_block(int k, std::uint64_t lo, std::uint64_t hi,
                           std::size_t block_size = kDefaultBlockSize);

}  // namespace piltz

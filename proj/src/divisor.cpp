#include "piltz/divisor.hpp"

#include <algorithm>
#include <string>

#include "piltz/error.hpp"
#include "piltz/int128.hpp"

namespace piltz {

u128 DivisorBlock::sum() const {
    u128 s = 0;
    for (auto v : values) s += v;
    return s;
}

std::uint64_t prime_power_count(int k, unsigned a) {
    if (k < 1) throw DomainError("k must be >= 1");
    // binomial(a + k - 1, a), built incrementally so every step is exact.
    u128 c = 1;
    for (unsigned i = 1; i <= a; ++i) {
        c = c * static_cast<u128>(static_cast<unsigned>(k) - 1 + i) / i;
        if (c > UINT64_MAX) throw OverflowError("d_k(p^a) exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

DivisorSieve::DivisorSieve(int k, std::uint64_t max_hi, std::size_t block_size)
    : k_(k), max_hi_(max_hi), block_size_(block_size) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (max_hi < 2) throw DomainError("sieve limit must be >= 2");
    if (block_size == 0) throw DomainError("block size must be positive");
    std::uint64_t root = isqrt(max_hi - 1);
    if (root > UINT32_MAX - 1) throw DomainError("sieve limit too large");
    primes_ = primes_up_to(static_cast<std::uint32_t>(root));
    for (unsigned a = 0; a < binom_.size(); ++a) {
        try {
            binom_[a] = prime_power_count(k, a);
        } catch (const OverflowError&) {
            binom_overflow_[a] = true;
        }
    }
}

void DivisorSieve::check_range(std::uint64_t lo, std::uint64_t hi) const {
    if (lo == 0) throw DomainError("d_k segment must start at n >= 1");
    if (hi <= lo) throw DomainError("empty d_k segment");
    if (hi > max_hi_) {
        throw DomainError("segment end " + std::to_string(hi) + " beyond sieve limit " +
                          std::to_string(max_hi_));
    }
}

void DivisorSieve::fill(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out,
                        Workspace& ws) const {
    check_range(lo, hi);
    const std::size_t n = hi - lo;
    if (n > block_size_) throw DomainError("segment longer than the configured block size");
    if (out.size() < n) throw DomainError("output span too small");

    std::fill_n(out.begin(), n, std::uint64_t{1});
    if (k_ == 1) return;

    ws.part.assign(n, 1);
    ws.exps.assign(n, 0);
    std::uint64_t* part = ws.part.data();
    std::uint8_t* exps = ws.exps.data();
    std::uint64_t* val = out.data();
    bool overflow = false;

    const std::uint64_t last = hi - 1;
    for (std::uint32_t p32 : primes_) {
        const std::uint64_t p = p32;
        if (p * p > last) break;
        for (u128 q = p; q <= last; q *= p) {
            const auto qq = static_cast<std::uint64_t>(q);
            const std::uint64_t start = (lo + qq - 1) / qq * qq;
            for (std::uint64_t m = start; m < hi; m += qq) {
                part[m - lo] *= p;
                ++exps[m - lo];
            }
        }
        const std::uint64_t start = (lo + p - 1) / p * p;
        for (std::uint64_t m = start; m < hi; m += p) {
            const std::size_t i = m - lo;
            const unsigned a = exps[i];
            overflow |= binom_overflow_[a];
            overflow |= __builtin_mul_overflow(val[i], binom_[a], &val[i]);
            exps[i] = 0;
        }
    }
    const auto kk = static_cast<std::uint64_t>(k_);
    for (std::size_t i = 0; i < n; ++i) {
        // Whatever the base primes did not account for is a single prime.
        if (part[i] != lo + i) overflow |= __builtin_mul_overflow(val[i], kk, &val[i]);
    }
    if (overflow) throw OverflowError("d_k value exceeds 64 bits; reduce k or the segment range");
}

DivisorBlock DivisorSieve::block(std::uint64_t lo, std::uint64_t hi) const {
    check_range(lo, hi);
    DivisorBlock b{k_, lo, hi, std::vector<std::uint64_t>(hi - lo)};
    Workspace ws;
    for (std::uint64_t a = lo; a < hi; a += block_size_) {
        std::uint64_t e = std::min<std::uint64_t>(hi, a + block_size_);
        fill(a, e, std::span<std::uint64_t>(b.values).subspan(a - lo, e - a), ws);
    }
    return b;
}

u128 DivisorSieve::range_sum(std::uint64_t lo, std::uint64_t hi, Workspace& ws) const {
    if (hi <= lo) return 0;
    check_range(lo, hi);
    std::vector<std::uint64_t> buf(std::min<std::uint64_t>(hi - lo, block_size_));
    u128 s = 0;
    for (std::uint64_t a = lo; a < hi; a += block_size_) {
        std::uint64_t e = std::min<std::uint64_t>(hi, a + block_size_);
        fill(a, e, buf, ws);
        for (std::uint64_t i = 0; i < e - a; ++i) s += buf[i];
    }
    return s;
}

DivisorBlock divisor_block(int k, std::uint64_t lo, std::uint64_t hi, std::size_t block_size) {
    if (lo == 0) throw DomainError("d_k segment must start at n >= 1");
    if (hi <= lo) throw DomainError("empty d_k segment");
    if (hi - lo > block_size) throw DomainError("segment longer than the configured block size");
    DivisorSieve sieve(k, std::max<std::uint64_t>(hi, 2), block_size);
    return sieve.block(lo, hi);
}

}  // namespace piltz

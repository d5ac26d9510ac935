#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "piltz/divisor.hpp"
#include "piltz/error.hpp"

TEST_CASE("d_k matches ordered factorization counts") {
    for (int k = 1; k <= 4; ++k) {
        const auto b = piltz::divisor_block(k, 1, 601);
        for (std::uint64_t n = 1; n <= 600; ++n) CHECK(b.at(n) == oracle::dk_count(k, n));
    }
}

TEST_CASE("segmented sieve against convolution table") {
    for (int k : {2, 3, 5, 6}) {
        const auto want = oracle::dk_table(k, 60000);
        piltz::DivisorSieve sieve(k, 60001, 1000);
        piltz::DivisorSieve::Workspace ws;
        std::vector<std::uint64_t> out(777);
        for (std::uint64_t lo : {1ULL, 999ULL, 12345ULL, 52000ULL}) {
            const std::uint64_t hi = std::min<std::uint64_t>(lo + out.size(), 60001);
            sieve.fill(lo, hi, out, ws);
            for (std::uint64_t n = lo; n < hi; ++n) REQUIRE(out[n - lo] == want[n]);
        }
        const auto s = oracle::prefix(want);
        CHECK(sieve.range_sum(1, 60001, ws) == s[60000]);
        CHECK(sieve.range_sum(30000, 30001, ws) == want[30000]);
    }
}

TEST_CASE("prime powers and primes") {
    CHECK(piltz::prime_power_count(3, 4) == 15);
    CHECK(piltz::prime_power_count(2, 10) == 11);
    CHECK_THROWS_AS(piltz::prime_power_count(60, 60), piltz::OverflowError);
    const auto p = piltz::primes_up_to(100);
    CHECK(p.size() == 25);
    CHECK(p.back() == 97);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(piltz::divisor_block(0, 1, 10), piltz::DomainError);
    CHECK_THROWS_AS(piltz::divisor_block(2, 0, 10), piltz::DomainError);
    piltz::DivisorSieve sieve(2, 100);
    CHECK_THROWS(sieve.block(50, 200));
}

namespace {

std::uint64_t dk_trial(int k, std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        std::uint64_t c = 1;  // binomial(a + k - 1, k - 1)
        for (unsigned j = 1; j <= a; ++j) c = c * (j + k - 1) / j;
        r *= c;
    }
    return n > 1 ? r * k : r;
}

}  // namespace

TEST_CASE("block near 10^12 against trial division") {
    const std::uint64_t lo = 1'000'000'000'000ULL - 50;
    for (int k : {2, 3}) {
        const auto b = piltz::divisor_block(k, lo, lo + 100);
        for (std::uint64_t n = lo; n < lo + 100; ++n) CHECK(b.at(n) == dk_trial(k, n));
    }
    CHECK(dk_trial(3, 1'000'000'000'000ULL) == 91 * 91);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "piltz/dd.hpp"
#include "piltz/int128.hpp"

using piltz::dd;
using oracle::big;

namespace {

big to_big(const dd& a) { return big(a.hi) + big(a.lo); }

double rel(const dd& got, const big& want) {
    const big d = abs(to_big(got) - want);
    const big w = abs(want);
    return static_cast<double>(w == 0 ? d : d / w);
}

}  // namespace

TEST_CASE("arithmetic against 50-digit floats") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const dd a = dd(std::ldexp(u(rng), static_cast<int>(rng() % 60) - 30)) + std::ldexp(u(rng), -60);
        const dd b = dd(std::ldexp(u(rng), static_cast<int>(rng() % 60) - 30)) + std::ldexp(u(rng), -60);
        const big A = to_big(a);
        const big B = to_big(b);
        CHECK(rel(a * b, A * B) < 1e-30);
        CHECK(rel(a / b, A / B) < 1e-30);
        if (A + B != 0) CHECK(static_cast<double>(abs(to_big(a + b) - (A + B))) <= 1e-31 * static_cast<double>(abs(A) + abs(B)));
    }
}

TEST_CASE("elementary functions against 50-digit floats") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-3, 1e9);
    for (int i = 0; i < 300; ++i) {
        const dd a = dd(u(rng)) + std::ldexp(u(rng), -70);
        const big A = to_big(a);
        CHECK(rel(piltz::sqrt(a), boost::multiprecision::sqrt(A)) < 1e-30);
        CHECK(rel(piltz::log(a), boost::multiprecision::log(A)) < 1e-30);
        for (int k = 2; k <= 6; ++k) {
            CHECK(rel(piltz::nroot(a, k), boost::multiprecision::pow(A, big(1) / k)) < 1e-30);
        }
        CHECK(rel(piltz::powi(a, 3), A * A * A) < 1e-30);
    }
    for (double x : {-20.0, -1.0, -1e-5, 0.3, 1.0, 2.5, 40.0}) {
        const dd a = dd(x) + x * 1e-18;
        CHECK(rel(piltz::exp(a), boost::multiprecision::exp(to_big(a))) < 1e-30);
        CHECK(rel(piltz::pow(dd(7.5), a), boost::multiprecision::pow(big(7.5), to_big(a))) < 1e-29);
    }
}

TEST_CASE("frozen values") {
    // mpmath, 40 digits
    CHECK(rel(piltz::log(dd(100.0)), big("4.605170185988091368035982909368728415202")) < 1e-31);
    CHECK(rel(piltz::exp(dd(1.0)), big("2.718281828459045235360287471352662497757")) < 1e-31);
}

TEST_CASE("decimal round trip") {
    const dd g = piltz::dd_from_string("-0.0728158454836767248605863758749");
    CHECK(piltz::to_string(g, 30) == "-0.0728158454836767248605863758749");
    CHECK(rel(g, big("-0.0728158454836767248605863758749")) < 1e-31);
    const dd big_int = piltz::from_u128(static_cast<piltz::u128>(1) << 100);
    CHECK(piltz::to_string(big_int, 31) == "1.267650600228229401496703205376e30");
}

TEST_CASE("floor and frac") {
    const dd x = dd(1e15) + 0.25;
    CHECK(static_cast<double>(piltz::frac(x)) == doctest::Approx(0.25).epsilon(1e-15));
    const dd y = dd(4.0, -1e-20);
    CHECK(piltz::floor(y) == dd(3.0));
    CHECK(static_cast<double>(piltz::frac(y)) == doctest::Approx(1.0));
}

TEST_CASE("128-bit helpers") {
    const piltz::u128 v = (static_cast<piltz::u128>(0x0123456789abcdefULL) << 64) | 0xfedcba9876543210ULL;
    CHECK(piltz::u128_from_string(piltz::u128_to_string(v)) == v);
    CHECK(piltz::u128_to_string(0) == "0");
    for (std::uint64_t n : {0ULL, 1ULL, 15ULL, 16ULL, 999999999999ULL, 18446744073709551615ULL}) {
        const std::uint64_t r = piltz::isqrt(n);
        CHECK(static_cast<piltz::u128>(r) * r <= n);
        CHECK(static_cast<piltz::u128>(r + 1) * (r + 1) > n);
    }
    CHECK(piltz::hex64(piltz::fnv1a64("")) == "cbf29ce484222325");
}

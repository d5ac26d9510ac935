#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "piltz/resonance.hpp"

using oracle::big;

namespace {

// frac(k (n x)^(1/k)) with the integer part of the root peeled off first:
// r = m + t with m = floor(r), then k t mod 1.
double phase_oracle(int k, std::uint64_t n, double x) {
    const big nx = big(n) * big(x);
    const big r = boost::multiprecision::pow(nx, big(1) / k);
    const big m = boost::multiprecision::floor(r);
    const big t = k * (r - m);
    return static_cast<double>(t - boost::multiprecision::floor(t));
}

double circular(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

}  // namespace

TEST_CASE("phase reduction against a peeled 50-digit root") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const int k = 2 + static_cast<int>(rng() % 4);
        const std::uint64_t n = 1 + rng() % 1'000'000;
        const double x = 1.0 + static_cast<double>(rng() % 1'000'000) + 0.125 * static_cast<double>(rng() % 8);
        const double got = static_cast<double>(piltz::resonance_phase(k, n, x));
        CHECK(2 * M_PI * circular(got, phase_oracle(k, n, x)) < 1e-8);
    }
}

TEST_CASE("single term and empty sums") {
    // V / x in [1, 2): only n = 1.
    const double x = 1e6;
    const double want = std::cbrt(x) / (M_PI * std::sqrt(3.0)) * std::cos(6 * M_PI * std::cbrt(x));
    CHECK(piltz::qk_sum(3, x, 1.5e6) == doctest::Approx(want).epsilon(1e-12));
    CHECK(piltz::qk_sum(3, x, 0.5e6) == 0.0);
    const auto p = piltz::ResonanceParams::from_Y(3, 2 * M_PI);
    CHECK(p.V == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(piltz::qk_sum(3, 5.0, p.V) == 0.0);
}

TEST_CASE("order of summation and the triangle bound") {
    const piltz::ResonanceSum q(3, 200000);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 40; ++i) {
        const double x = 1e4 + static_cast<double>(rng() % 10000);
        const double V = x * static_cast<double>(1 + rng() % 20000);
        const double a = q.at(x, V);
        CHECK(std::abs(a - q.at_reversed(x, V)) < 1e-9 * std::max(1.0, std::abs(a)));
        CHECK(std::abs(a) <= q.abs_bound(x, V));
        CHECK(a == doctest::Approx(piltz::qk_sum(3, x, V)).epsilon(1e-12));
    }
}

TEST_CASE("comparison report with an empty cutoff") {
    const auto cp = piltz::build_checkpoints(3, 20001, 1000);
    piltz::Summatory t(cp);
    piltz::DeltaEvaluator e(t);
    const auto r = piltz::qk_delta_compare(e, 10000, 2 * M_PI, 200, 3);
    CHECK(r.rows.size() == 200);
    CHECK(r.rms_residual == doctest::Approx(r.rms_delta));
    for (const auto& row : r.rows) {
        CHECK(row.qk == 0.0);
        CHECK(row.x >= 10000);
        CHECK(row.x <= 20000);
    }
    const auto again = piltz::qk_delta_compare(e, 10000, 100, 50, 8);
    const auto same = piltz::qk_delta_compare(e, 10000, 100, 50, 8);
    CHECK(again.rows.front().x == same.rows.front().x);
    CHECK(again.correlation == same.correlation);
}

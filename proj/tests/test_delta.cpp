#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "piltz/delta.hpp"
#include "piltz/error.hpp"

using piltz::dd;

namespace {

struct Fixture {
    explicit Fixture(int k, std::uint64_t limit = 200000, std::uint64_t stride = 1000)
        : cp(piltz::build_checkpoints(k, limit, stride)), table(cp), eval(table) {}
    piltz::SummatoryCheckpoint cp;
    piltz::Summatory table;
    piltz::DeltaEvaluator eval;
};

// S_k(x) - x P(log x) from oracle sums and a library-free polynomial:
// P_2 = L + 2 g0 - 1, P_3 = L^2/2 + (3 g0 - 1) L + 3 g0^2 - 3 g0 - 3 g1 + 1.
double delta_oracle(int k, const std::vector<__uint128_t>& S, double x) {
    using oracle::big;
    const big g0("0.5772156649015328606065120900824024310422");
    const big g1("-0.07281584548367672486058637587490131913773");
    const big X(x);
    const big L = boost::multiprecision::log(X);
    big P = 1;
    if (k == 2) P = L + 2 * g0 - 1;
    if (k == 3) P = L * L / 2 + (3 * g0 - 1) * L + 3 * g0 * g0 - 3 * g0 - 3 * g1 + 1;
    const auto n = static_cast<std::size_t>(std::floor(x));
    return static_cast<double>(big(static_cast<unsigned long long>(S[n])) - X * P);
}

}  // namespace

TEST_CASE("Delta_1 is minus the fractional part") {
    Fixture f(1, 1000, 100);
    CHECK(f.eval.at(7.25) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(f.eval.at(7.0) == doctest::Approx(0.0));
    CHECK(f.eval.at(7.0, piltz::Side::Left) == doctest::Approx(-1.0));
    CHECK(f.eval.star(7) == doctest::Approx(-0.5));
}

TEST_CASE("Delta_k against oracle sums") {
    for (int k : {2, 3}) {
        Fixture f(k);
        const auto S = oracle::prefix(oracle::dk_table(k, 200000));
        std::mt19937_64 rng(k);
        for (int i = 0; i < 300; ++i) {
            const double x = 1.0 + static_cast<double>(rng() % 19999900) / 100.0;
            const double want = delta_oracle(k, S, x);
            CHECK(f.eval.at(x) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
    }
    Fixture f3(3, 1000, 100);
    // mpmath, S_3(100) = 2400 minus 100 P_3(log 100)
    CHECK(f3.eval.at(100.0) == doctest::Approx(25.0510539192).epsilon(1e-10));
}

TEST_CASE("jumps, sides and midpoints") {
    Fixture f(3);
    const auto d = oracle::dk_table(3, 200000);
    for (std::uint64_t n : {10ULL, 720ULL, 5040ULL, 99991ULL, 166320ULL}) {
        const double right = f.eval.at(static_cast<double>(n), piltz::Side::Right);
        const double left = f.eval.at(static_cast<double>(n), piltz::Side::Left);
        CHECK(right - left == doctest::Approx(static_cast<double>(d[n])).epsilon(1e-12));
        CHECK(f.eval.star(n) == doctest::Approx(0.5 * (left + right)).epsilon(1e-12));
        // The left limit at n is the end of piece n - 1.
        CHECK(f.eval.piece(n - 1).left_end() == doctest::Approx(left).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("unit pieces agree with pointwise evaluation") {
    Fixture f(3);
    for (std::uint64_t n : {11ULL, 63ULL, 64ULL, 65ULL, 5000ULL, 199998ULL}) {
        const auto p = f.eval.piece(n);
        // dyadic offsets keep n + tau exact in double
        for (double tau : {0.0, 0.125, 0.5, 0.765625, 0.9990234375}) {
            const double want = f.eval.at(static_cast<double>(n) + tau);
            CHECK(p.at(tau) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
        CHECK(p.slope(0.5) < 0.0);
        if (auto z = p.zero()) CHECK(std::abs(p.at(*z)) < 1e-9);
    }
}

TEST_CASE("cursor, sorted points and stream agree") {
    Fixture f(2);
    piltz::PieceCursor cur(f.eval, 5000);
    std::mt19937_64 rng(9);
    std::uint64_t n = 100;
    for (int i = 0; i < 400; ++i) {
        const int step = static_cast<int>(rng() % 4000) - 1000;  // mostly forward, some back
        n = static_cast<std::uint64_t>(std::clamp<long long>(static_cast<long long>(n) + step, 1, 199999));
        const auto& p = cur.get(n);
        REQUIRE(p.S == f.table.at(n));
        REQUIRE(p.d == f.table.d(n));
    }
    std::vector<double> xs;
    for (int i = 0; i < 500; ++i) xs.push_back(1.0 + static_cast<double>(rng() % 1999000) / 10.0);
    std::sort(xs.begin(), xs.end());
    const auto vals = f.eval.at_sorted(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(vals[i] == f.eval.at(xs[i]));

    std::uint64_t seen = 0;
    const auto summary = piltz::delta_stream(f.eval, 1000.5, 20.0, [&](const piltz::UnitPiece& p) {
        CHECK(p.n == 1000 + seen);
        ++seen;
    });
    CHECK(summary.intervals == 21);
    CHECK(summary.first_n == 1000);
    CHECK(summary.last_n == 1020);
    CHECK(summary.increment == f.table.at(1020) - f.table.at(1000));
    const auto exact_end = piltz::delta_stream(f.eval, 1000.0, 20.0, [](const piltz::UnitPiece&) {});
    CHECK(exact_end.intervals == 20);
}

TEST_CASE("sign changes against a dense brute-force count") {
    for (int k : {2, 3}) {
        Fixture f(k, 20000, 1000);
        const double lo = 10.0;
        const double hi = 5000.0;
        // Brute force: both one-sided limits at every integer plus 64 interior points.
        std::uint64_t changes = 0;
        int last = 0;
        auto push = [&](double v) {
            const int s = (v > 0) - (v < 0);
            if (s == 0) return;
            if (last != 0 && s != last) ++changes;
            last = s;
        };
        for (std::uint64_t n = 10; n < 5000; ++n) {
            for (int j = 0; j < 64; ++j) push(f.eval.at(static_cast<double>(n) + j / 64.0));
            push(f.eval.at(static_cast<double>(n + 1), piltz::Side::Left));
        }
        push(f.eval.at(hi));
        CHECK(piltz::count_sign_changes(f.eval, lo, hi) == changes);
    }
}

TEST_CASE("domain and coverage errors") {
    Fixture f(2, 1000, 100);
    CHECK_THROWS_AS(f.eval.at(0.5), piltz::DomainError);
    CHECK_THROWS_AS(f.eval.at(1001.0), piltz::CoverageError);
    CHECK_THROWS_AS(f.eval.star(0), piltz::DomainError);
    CHECK_THROWS_AS(piltz::count_sign_changes(f.eval, 5.0, 100.0), piltz::DomainError);
    CHECK_THROWS_AS(piltz::parse_side("up"), piltz::DomainError);
}

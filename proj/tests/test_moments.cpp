#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "piltz/error.hpp"
#include "piltz/moments.hpp"

namespace {

struct Fixture {
    Fixture(int k, std::uint64_t limit, std::uint64_t stride)
        : cp(piltz::build_checkpoints(k, limit, stride)), table(cp), eval(table) {}
    piltz::SummatoryCheckpoint cp;
    piltz::Summatory table;
    piltz::DeltaEvaluator eval;
};

// Midpoint rule with n cells over [a, b], points evaluated in ascending batches.
double midpoint(const piltz::DeltaEvaluator& e, double a, double b, std::size_t n,
                const std::function<double(double, double)>& g, double shift_add, double shift_mult) {
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    const double w = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = a + (static_cast<double>(i) + 0.5) * w;
        ys[i] = xs[i] + shift_add + shift_mult * xs[i];
    }
    auto f = [&](const std::vector<double>& pts) {
        std::vector<double> v(pts.size(), 0.0);
        std::vector<double> inside;
        std::size_t first = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] >= 1.0) {
                if (first == pts.size()) first = i;
                inside.push_back(pts[i]);
            }
        }
        const auto got = e.at_sorted(inside);
        for (std::size_t i = 0; i < got.size(); ++i) v[first + i] = got[i];
        return v;
    };
    const auto fx = f(xs);
    const auto fy = f(ys);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += g(fx[i], fy[i]);
    return s * w;
}

}  // namespace

TEST_CASE("k = 1 closed forms") {
    Fixture f(1, 200, 10);
    const piltz::MomentOptions opt;
    CHECK(piltz::power_moment(f.eval, 10, 1, opt).value == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(piltz::power_moment(f.eval, 10, 2, opt).value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(piltz::power_moment(f.eval, 10, 4, opt).value == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(std::abs(piltz::diff_mean_square(f.eval, 16, 1.0, opt).value) < 1e-13);
    // Delta_1(x + 1/2) - Delta_1(x) = +-1/2
    CHECK(piltz::diff_mean_square(f.eval, 16, 0.5, opt).value == doctest::Approx(0.25).epsilon(1e-13));
    // sup over h of ({x} - {x + h})^2 = max(u, 1 - u)^2 averages to 7/12
    CHECK(piltz::sup_diff_mean_square(f.eval, 10, 1.0, opt).value == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("exact quadrature against a fine midpoint rule") {
    Fixture f(3, 30000, 1000);
    const piltz::MomentOptions opt;
    const double X = 5000;
    const auto sq = [](double a, double) { return a * a; };
    const double want2 = midpoint(f.eval, X, 2 * X, 2'000'000, sq, 0, 0) / X;
    const auto m2 = piltz::power_moment(f.eval, X, 2, opt);
    CHECK(m2.value == doctest::Approx(want2).epsilon(1e-4));
    CHECK(m2.error < 1e-6 * m2.value);
    const auto diff = [](double a, double b) { return (b - a) * (b - a); };
    const double want_h = midpoint(f.eval, X, 2 * X, 2'000'000, diff, 37.5, 0) / X;
    CHECK(piltz::diff_mean_square(f.eval, X, 37.5, opt).value == doctest::Approx(want_h).epsilon(1e-3));
    const double want_T = midpoint(f.eval, X, 2 * X, 2'000'000, diff, 0, 1.0 / 50) / X;
    const auto mt = piltz::mult_diff_mean_square(f.eval, X, 50, opt);
    CHECK(mt.value == doctest::Approx(want_T).epsilon(1e-3));
    CHECK(mt.kind == piltz::MomentKind::DiffMultT);
}

TEST_CASE("sup over shifts against a grid") {
    Fixture f(2, 30000, 1000);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const double x = 1000 + static_cast<double>(rng() % 1000000) / 100.0;
        const double H = 1 + static_cast<double>(rng() % 4000) / 100.0;
        const double exact = piltz::sup_shift_at(f.eval, x, H);
        const double base = f.eval.at(x);
        double grid = 0.0;
        for (int j = 0; j <= 1000; ++j) grid = std::max(grid, std::abs(f.eval.at(x + H * j / 1000.0) - base));
        CHECK(grid <= exact + 1e-9 * exact);
        CHECK(grid >= 0.5 * exact);
    }
}

TEST_CASE("stratified sampling brackets the exact value") {
    Fixture f(2, 30000, 1000);
    piltz::MomentOptions s;
    s.mode = piltz::MomentMode::Sample;
    s.samples = 20000;
    s.seed = 5;
    const double X = 10000;
    const auto e = piltz::power_moment(f.eval, X, 2, {});
    const auto m = piltz::power_moment(f.eval, X, 2, s);
    CHECK(std::abs(m.value - e.value) < 2.5 * m.error);
    const auto eh = piltz::sup_diff_mean_square(f.eval, X, 20, {});
    const auto mh = piltz::sup_diff_mean_square(f.eval, X, 20, s);
    CHECK(std::abs(mh.value - eh.value) < 2.5 * mh.error);
    CHECK(mh.units == 20000);
    s.seed = 6;
    CHECK(piltz::power_moment(f.eval, X, 2, s).value != m.value);
}

TEST_CASE("thread count does not change any bit") {
    Fixture f(3, 300000, 10000);
    piltz::MomentOptions one;
    piltz::MomentOptions many;
    many.threads = 4;
    const double X = 100000;
    CHECK(piltz::power_moment(f.eval, X, 2, one).value == piltz::power_moment(f.eval, X, 2, many).value);
    CHECK(piltz::power_moment(f.eval, X, 2, one).error == piltz::power_moment(f.eval, X, 2, many).error);
    CHECK(piltz::diff_mean_square(f.eval, X, 100, one).value == piltz::diff_mean_square(f.eval, X, 100, many).value);
    CHECK(piltz::sup_diff_mean_square(f.eval, X, 30, one).value ==
          piltz::sup_diff_mean_square(f.eval, X, 30, many).value);
    one.mode = many.mode = piltz::MomentMode::Sample;
    CHECK(piltz::power_moment(f.eval, X, 2, one).value == piltz::power_moment(f.eval, X, 2, many).value);
}

TEST_CASE("Saffari-Vaughan sides against brute-force double integrals") {
    Fixture f(2, 2000, 100);
    const double X = 100;
    const double h = 2;
    const auto r = piltz::saffari_vaughan_check(f.eval, X, h, 0.01);
    CHECK(r.ok);
    const auto diff = [](double a, double b) { return (b - a) * (b - a); };
    const double lhs = midpoint(f.eval, X / 2, X, 400000, diff, h, 0);
    CHECK(r.lhs == doctest::Approx(lhs).epsilon(2e-3));
    // f = Delta on t >= 1 and 0 below; beta over [0, 8h/X] by the midpoint rule
    const double B = 8 * h / X;
    const int nb = 200;
    double inner = 0.0;
    for (int i = 0; i < nb; ++i) {
        const double beta = (i + 0.5) * B / nb;
        inner += midpoint(f.eval, 0.0, X, 40000, diff, 0, beta);
    }
    const double rhs = 2 * X / h * inner * B / nb;
    CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-2));
    CHECK(r.lhs <= r.rhs);
}

TEST_CASE("Saffari-Vaughan holds across small configurations") {
    for (int k : {1, 2, 3}) {
        Fixture f(k, 20000, 1000);
        for (double X : {100.0, 1000.0}) {
            for (double h : {1.0, 10.0}) {
                const auto r = piltz::saffari_vaughan_check(f.eval, X, h, 0.01);
                CHECK_MESSAGE(r.ok, "k=" << k << " X=" << X << " h=" << h);
            }
        }
    }
}

TEST_CASE("preconditions") {
    Fixture f(2, 1000, 100);
    CHECK_THROWS_AS(piltz::diff_mean_square(f.eval, 100, 20, {}), piltz::DomainError);
    CHECK_THROWS_AS(piltz::mult_diff_mean_square(f.eval, 100, 1.5, {}), piltz::DomainError);
    CHECK_THROWS_AS(piltz::sup_diff_mean_square(f.eval, 100, 0.5, {}), piltz::DomainError);
    CHECK_THROWS_AS(piltz::power_moment(f.eval, 600, 2, {}), piltz::CoverageError);
    CHECK_THROWS_AS(piltz::power_moment(f.eval, 100, 5, {}), piltz::DomainError);
    piltz::BoundParams b;
    b.eta = 0;
    CHECK_THROWS_AS(b.validate(), piltz::DomainError);
    CHECK(piltz::moment_csv_header() == "k,X,kind,param,value,error,mode,elapsed");
}

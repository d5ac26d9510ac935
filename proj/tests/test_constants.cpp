#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "oracles.hpp"
#include "piltz/constants.hpp"

using piltz::dd;
using oracle::big;

namespace {

double diff(const dd& a, const big& b) { return static_cast<double>(big(a.hi) + big(a.lo) - b); }

}  // namespace

TEST_CASE("zeta on the real axis against Boost at 50 digits") {
    for (double s : {1.25, 4.0 / 3.0, 1.5, 2.0, 3.0, 7.5}) {
        const big want = boost::math::zeta(big(s));
        CHECK(std::abs(diff(piltz::zeta_real(dd(s)), want)) < 1e-29 * static_cast<double>(want));
    }
    const dd third = dd(4.0) / 3.0;
    const big want = boost::math::zeta(big(4) / 3);
    CHECK(std::abs(diff(piltz::zeta_real(third), want)) < 1e-28);
}

TEST_CASE("C_2 closed form") {
    using boost::multiprecision::sqrt;
    const big z32 = boost::math::zeta(big(3) / 2);
    const big z3 = boost::math::zeta(big(3));
    const big want = sqrt(z32 * z32 * z32 * z32 / (4 * z3)) / boost::math::constants::pi<big>();
    CHECK(std::abs(diff(piltz::c2_closed_form(), want)) < 1e-29);
    CHECK(piltz::to_string(piltz::c2_closed_form(), 20) == "0.99066945358341820916");
}

TEST_CASE("Euler route reproduces C_2 and is stable in the prime limit") {
    const auto c = piltz::ck_euler(2, 1'000'000);
    const double closed = static_cast<double>(piltz::c2_closed_form());
    CHECK(std::abs(static_cast<double>(c.value) - closed) < 1e-12);
    CHECK(c.contains(closed));

    const auto a = piltz::ck_euler(3, 100'000);
    const auto b = piltz::ck_euler(3, 1'000'000);
    CHECK(std::abs(static_cast<double>(a.value - b.value)) < a.width());
    CHECK(static_cast<double>(b.value) == doctest::Approx(18.91441806926910).epsilon(1e-11));
    CHECK(b.width() < 1e-8);
}

TEST_CASE("direct route brackets the Euler value") {
    const auto d2 = piltz::ck_direct(2, 1'000'000);
    CHECK(d2.contains(static_cast<double>(piltz::c2_closed_form())));
    CHECK(d2.bracket_lo < d2.bracket_hi);
    const auto d3 = piltz::ck_direct(3, 1'000'000);
    CHECK(d3.contains(static_cast<double>(piltz::ck_euler(3).value)));
}

TEST_CASE("tolerance requests") {
    CHECK_THROWS(piltz::ck_euler(3, 1000, 1e-20));
    CHECK_THROWS(piltz::ck_euler(0));
    CHECK_THROWS(piltz::ck_euler(7));
}

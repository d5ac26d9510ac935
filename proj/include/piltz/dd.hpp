#pragma once

// Double-double arithmetic: a value is the unevaluated sum hi + lo of two
// doubles with |lo| <= ulp(hi)/2, giving about 106 bits (~31 digits).
// Built on the classic error-free transformations (TwoSum, FMA-based
// TwoProd); the elementary functions follow the QD library's algorithms.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace piltz {

using u128 = unsigned __int128;
using i128 = __int128;

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace eft {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b|.
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace eft

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
    dd s = eft::two_sum(a.hi, b.hi);
    dd t = eft::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = eft::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return eft::quick_two_sum(s.hi, s.lo);
}

inline dd operator+(const dd& a, double b) {
    dd s = eft::two_sum(a.hi, b);
    s.lo += a.lo;
    return eft::quick_two_sum(s.hi, s.lo);
}
inline dd operator+(double a, const dd& b) { return b + a; }

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }
inline dd operator-(const dd& a, double b) { return a + (-b); }
inline dd operator-(double a, const dd& b) { return (-b) + a; }

inline dd operator*(const dd& a, const dd& b) {
    dd p = eft::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return eft::quick_two_sum(p.hi, p.lo);
}

inline dd operator*(const dd& a, double b) {
    dd p = eft::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return eft::quick_two_sum(p.hi, p.lo);
}
inline dd operator*(double a, const dd& b) { return b * a; }

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    return eft::quick_two_sum(q1, q2) + q3;
}

inline dd operator/(const dd& a, double b) {
    double q1 = a.hi / b;
    dd r = a - eft::two_prod(q1, b);
    double q2 = r.hi / b;
    r = r - eft::two_prod(q2, b);
    double q3 = r.hi / b;
    return eft::quick_two_sum(q1, q2) + q3;
}
inline dd operator/(double a, const dd& b) { return dd(a) / b; }

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<(const dd& a, const dd& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline dd sqr(const dd& a) {
    dd p = eft::two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return eft::quick_two_sum(p.hi, p.lo);
}

inline dd abs(const dd& a) { return a.hi < 0.0 ? -a : a; }

inline dd ldexp(const dd& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline dd floor(const dd& a) {
    double h = std::floor(a.hi);
    if (h != a.hi) return {h, 0.0};
    return eft::quick_two_sum(h, std::floor(a.lo));
}

/// Fractional part in [0, 1).
inline dd frac(const dd& a) { return a - floor(a); }

inline dd from_u128(u128 v) {
    double h = static_cast<double>(v);
    i128 rem = static_cast<i128>(v) - static_cast<i128>(static_cast<u128>(h));
    return eft::quick_two_sum(h, static_cast<double>(rem));
}

inline dd from_u64(std::uint64_t v) { return from_u128(v); }

dd sqrt(const dd& a);
dd exp(const dd& a);
dd log(const dd& a);
dd pow(const dd& base, const dd& exponent);
dd powi(const dd& base, int n);
/// Real k-th root of a >= 0.
dd nroot(const dd& a, int k);

namespace ddconst {
inline constexpr dd pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr dd ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
}  // namespace ddconst

/// Decimal rendering with `digits` significant digits, fixed notation when
/// the decimal exponent lies in [-12, 24), scientific otherwise.
std::string to_string(const dd& a, int digits = 30);

/// Parses a decimal literal such as "-0.0728158454836767248605863758749".
dd dd_from_string(std::string_view text);

}  // namespace piltz

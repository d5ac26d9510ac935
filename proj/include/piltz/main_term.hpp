#pragma once

#include <array>
#include <string>
#include <vector>

#include "piltz/dd.hpp"

namespace piltz {

inline constexpr int kMaxK = 6;
inline constexpr int kMaxStieltjes = 8;

/// gamma_n, 0 <= n <= 8, to at most 30 digits. The table was produced by an
/// Euler-Maclaurin evaluation and is re-derived in the test suite.
dd stieltjes(int n, int digits = 30);

/// The residue of zeta(s)^k x^s / s at s = 1 is x * P(log x), with
/// P(L) = sum_j coeffs[j] L^j.
struct MainTermPoly {
    int k = 0;
    int order = 0;                 // series truncation order in w = s - 1
    std::vector<dd> coeffs;        // c_0 .. c_{k-1}
    std::vector<dd> gammas;        // gamma_0 .. gamma_{k-1}
    std::vector<std::string> gamma_tags;
};

/// Laurent data of zeta(s)^k / s at s = 1, truncated at w^order
/// (order 0 means 2k).
MainTermPoly main_term_coeffs(int k, int order = 0);

/// P(L) by Horner in double-double.
dd eval_poly(const std::vector<dd>& coeffs, const dd& L);

/// x * P_k(log x).
dd main_term_value(int k, double x);

inline constexpr int kLocalOrder = 8;

/// f(c + t) = sum_j m[j] t^j with f the main term; m0 carries the constant
/// term to full precision, m[0] is its double rounding.
struct LocalTaylor {
    dd m0;
    std::array<double, kLocalOrder + 1> m{};
};

/// Precomputed evaluator for f(x) = x P(log x) and its derivatives.
/// f^(j)(x) = x^(1-j) Q_j(log x) with Q_0 = P, Q_{j+1} = (1-j) Q_j + Q_j'.
class MainTerm {
public:
    explicit MainTerm(MainTermPoly poly);
    explicit MainTerm(int k) : MainTerm(main_term_coeffs(k)) {}

    int k() const { return poly_.k; }
    const MainTermPoly& poly() const { return poly_; }

    dd value(const dd& x) const;
    dd value(double x) const { return value(dd(x)); }
    /// f'(x) in double.
    double derivative(double x) const;
    LocalTaylor taylor(double c) const;

private:
    MainTermPoly poly_;
    std::array<std::vector<double>, kLocalOrder + 1> q_;  // Q_j / j!
};

}  // namespace piltz

#pragma once

#include <cstdint>
#include <string>

#include "piltz/dd.hpp"

namespace piltz {

/// zeta(s) for real s > 1 by Euler-Maclaurin summation in double-double.
dd zeta_real(const dd& s);

/// (1/pi) sqrt(zeta(3/2)^4 / (4 zeta(3))), from sum d(n)^2 n^-s = zeta(s)^4 / zeta(2s).
dd c2_closed_form();

enum class CkMethod { EulerProduct, DirectSum };
const char* method_name(CkMethod m);

/// C_k = (1/pi) sqrt(D_k(1 + 1/k) / (2k)), D_k(s) = sum d_k(n)^2 n^-s.
struct CkValue {
    int k = 0;
    CkMethod method = CkMethod::EulerProduct;
    dd value;
    /// Euler route: value +- agreement delta. Direct route: certified
    /// interval [partial sum, partial sum + tail bound] mapped to C_k.
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    dd dirichlet_value;        // D_k(1 + 1/k) behind `value`
    std::uint64_t limit = 0;   // prime limit or N
    double tail_constant = 0;  // direct route: fitted A after doubling
    std::string provenance;

    double width() const { return bracket_hi - bracket_lo; }
    double midpoint() const { return 0.5 * (bracket_lo + bracket_hi); }
    bool contains(double v) const { return bracket_lo <= v && v <= bracket_hi; }
};

/// Euler product over p <= prime_limit with the prime tail folded in through
/// sum_{p > P} p^-2s ~ E1((2s - 1) log P). The bracket half-width combines
/// the shift against prime_limit / 10 and a tenth of the tail correction.
/// tol > 0 throws ToleranceError when the bracket is wider.
CkValue ck_euler(int k, std::uint64_t prime_limit = 1'000'000, double tol = 0.0);

/// Partial sum to N plus the tail bound sigma A k^(m+1) Gamma(m+1, log N / k),
/// m = k^2 - 1, where sum_{n<=x} d_k(n)^2 <= A x (log x)^m with A the largest
/// ratio seen on [N/2, N], doubled.
CkValue ck_direct(int k, std::uint64_t N, double tol = 0.0);

}  // namespace piltz

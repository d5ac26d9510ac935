#include "piltz/constants.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <vector>

#include "piltz/divisor.hpp"
#include "piltz/error.hpp"
#include "piltz/main_term.hpp"
#include "piltz/parallel.hpp"

namespace piltz {

namespace {

// B_2 .. B_30 as numerator / denominator.
constexpr double kBernoulli[15][2] = {
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029.0, 870},
    {8615841276005.0, 14322},
};

dd c_from_d(const dd& D, int k) { return sqrt(D / static_cast<double>(2 * k)) / ddconst::pi; }

void check_k(int k) {
    if (k < 2 || k > kMaxK) throw DomainError("C_k supported for 2 <= k <= 6");
}

}  // namespace

dd zeta_real(const dd& s) {
    if (!(s.hi > 1.0)) throw DomainError("zeta_real needs s > 1");
    constexpr int N = 64;
    dd sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += exp(-s * log(dd(n)));
    const dd logN = log(dd(N));
    const dd Ns = exp(-s * logN);  // N^-s
    sum += Ns * static_cast<double>(N) / (s - 1.0);
    sum += ldexp(Ns, -1);
    // B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1)
    dd rising = s;
    dd npow = Ns / static_cast<double>(N);
    dd fact = 2.0;
    for (int j = 1; j <= 15; ++j) {
        const dd b = dd(kBernoulli[j - 1][0]) / kBernoulli[j - 1][1];
        sum += b / fact * rising * npow;
        rising = rising * (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        npow = npow / static_cast<double>(N * N);
        fact = fact * static_cast<double>(2 * j + 1) * static_cast<double>(2 * j + 2);
    }
    return sum;
}

dd c2_closed_form() {
    const dd z32 = zeta_real(dd(1.5));
    const dd z3 = zeta_real(dd(3.0));
    return sqrt(sqr(sqr(z32)) / (4.0 * z3)) / ddconst::pi;
}

const char* method_name(CkMethod m) { return m == CkMethod::EulerProduct ? "euler-product" : "direct-sum"; }

CkValue ck_euler(int k, std::uint64_t prime_limit, double tol) {
    check_k(k);
    if (prime_limit < 1000) throw DomainError("prime limit must be >= 1000");
    if (prime_limit > UINT32_MAX) throw DomainError("prime limit too large");
    const int k2 = k * k;
    const dd s = dd(1.0) + dd(1.0) / static_cast<double>(k);

    // Local factors (1 - x)^(k^2) sum_a binom(a+k-1, k-1)^2 x^a, x = p^-s.
    const std::uint64_t alt_limit = prime_limit / 10;
    dd product = 1.0;
    dd product_alt = 1.0;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(prime_limit))) {
        const dd x = exp(-s * log(dd(static_cast<double>(p))));
        dd series = 1.0;
        dd xa = 1.0;
        double binom = 1.0;
        for (unsigned a = 1; a < 2000; ++a) {
            binom = binom * static_cast<double>(a + k - 1) / static_cast<double>(a);
            xa *= x;
            const dd term = eft::two_prod(binom, binom) * xa;
            series += term;
            if (term.hi < 1e-34 * series.hi) break;
        }
        const dd local = powi(dd(1.0) - x, k2) * series;
        product *= local;
        if (p <= alt_limit) product_alt = product;
    }

    const dd zs = zeta_real(s);
    const dd zpow = powi(zs, k2);
    const double two_s_minus_1 = 2.0 * static_cast<double>(s) - 1.0;
    const double bk = 0.5 * k * (k + 1);
    const double c2 = bk * bk - 0.5 * k2 * k2 - 0.5 * k2;
    auto tail = [&](std::uint64_t P) {
        return c2 * boost::math::expint(1, two_s_minus_1 * std::log(static_cast<double>(P)));
    };
    const double t_main = tail(prime_limit);
    const double t_alt = tail(alt_limit);
    const dd D = zpow * product * exp(dd(t_main));
    const dd D_alt = zpow * product_alt * exp(dd(t_alt));

    CkValue v;
    v.k = k;
    v.method = CkMethod::EulerProduct;
    v.dirichlet_value = D;
    v.value = c_from_d(D, k);
    v.limit = prime_limit;
    const double c = static_cast<double>(v.value);
    const double agreement = std::abs(c - static_cast<double>(c_from_d(D_alt, k)));
    // C ~ sqrt(D): a relative error r in D is r/2 in C.
    const double tail_part = 0.1 * std::abs(t_main) * 0.5 * c;
    const double half = agreement + tail_part + 1e-28 * c;
    v.bracket_lo = c - half;
    v.bracket_hi = c + half;
    v.provenance = "euler-product over p <= " + std::to_string(prime_limit) +
                   ", prime tail via E1, zeta by Euler-Maclaurin; no published C_k to compare against";
    if (tol > 0.0 && v.width() > tol) throw ToleranceError("euler-product bracket wider than tolerance");
    return v;
}

CkValue ck_direct(int k, std::uint64_t N, double tol) {
    check_k(k);
    if (N < 10000) throw DomainError("direct sum needs N >= 10^4");
    const double sigma = 1.0 + 1.0 / k;
    const int m = k * k - 1;

    DivisorSieve sieve(k, N + 1);
    DivisorSieve::Workspace ws;
    std::vector<std::uint64_t> buf(sieve.block_size());
    CompensatedSum partial;
    u128 squares = 0;
    double A = 0.0;
    const std::uint64_t fit_lo = N / 2;
    for (std::uint64_t lo = 1; lo <= N; lo += sieve.block_size()) {
        const std::uint64_t hi = std::min<std::uint64_t>(N + 1, lo + sieve.block_size());
        sieve.fill(lo, hi, buf, ws);
        for (std::uint64_t n = lo; n < hi; ++n) {
            const double d = static_cast<double>(buf[n - lo]);
            const u128 dd2 = static_cast<u128>(buf[n - lo]) * buf[n - lo];
            squares += dd2;
            partial.add(d * d * std::pow(static_cast<double>(n), -sigma));
            if (n >= fit_lo) {
                const double x = static_cast<double>(n);
                const double ratio = static_cast<double>(squares) / (x * std::pow(std::log(x), m));
                A = std::max(A, ratio);
            }
        }
    }
    const double A2 = 2.0 * A;
    const double z = std::log(static_cast<double>(N)) / k;
    const double tail = sigma * A2 * std::pow(static_cast<double>(k), m + 1) *
                        boost::math::tgamma(static_cast<double>(m + 1), z);

    CkValue v;
    v.k = k;
    v.method = CkMethod::DirectSum;
    v.limit = N;
    v.tail_constant = A2;
    const dd lo_d = partial.value();
    const dd hi_d = lo_d + tail;
    v.bracket_lo = static_cast<double>(c_from_d(lo_d, k));
    v.bracket_hi = static_cast<double>(c_from_d(hi_d, k));
    v.dirichlet_value = lo_d;
    v.value = dd(v.midpoint());
    v.provenance = "direct sum to N = " + std::to_string(N) +
                   ", tail by partial summation, fitted constant doubled (heuristic factor 2)";
    if (tol > 0.0 && v.width() > tol) throw ToleranceError("direct-sum tail bracket wider than tolerance; raise N");
    return v;
}

}  // namespace piltz

#include "piltz/main_term.hpp"

#include <cmath>

#include "piltz/error.hpp"

namespace piltz {

namespace {

// mpmath, 34 significant digits.
constexpr const char* kStieltjes[kMaxStieltjes + 1] = {
    "0.5772156649015328606065120900824024",
    "-0.07281584548367672486058637587490132",
    "-0.009690363192872318484530386035212529",
    "0.002053834420303345866160046542753384",
    "0.002325370065467300057468170177526068",
    "0.0007933238173010627017533348774444448",
    "-0.0002387693454301996098724218419080043",
    "-0.0005272895670577510460740975054788583",
    "-0.0003521233538030395096020521650012087",
};

std::vector<dd> series_mul(const std::vector<dd>& a, const std::vector<dd>& b) {
    std::vector<dd> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

}  // namespace

dd stieltjes(int n, int digits) {
    if (n < 0 || n > kMaxStieltjes) throw DomainError("Stieltjes constants available for 0 <= n <= 8");
    if (digits < 1 || digits > 30) throw DomainError("Stieltjes precision limited to 30 digits");
    dd g = dd_from_string(kStieltjes[n]);
    if (digits >= 30) return g;
    // Round to the requested number of significant digits.
    const double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(std::fabs(g.hi))));
    dd scaled = g * scale;
    dd rounded = floor(scaled + 0.5);
    return rounded / scale;
}

MainTermPoly main_term_coeffs(int k, int order) {
    if (k < 1 || k > kMaxK) throw DomainError("main term supported for 1 <= k <= 6");
    if (order == 0) order = 2 * k;
    if (order < k) throw DomainError("series order must be at least k");

    const std::size_t len = static_cast<std::size_t>(order) + 1;
    // w zeta(1 + w) = 1 + sum_n (-1)^n gamma_n w^(n+1) / n!
    std::vector<dd> z(len);
    z[0] = 1.0;
    dd fact = 1.0;
    for (int n = 0; n <= kMaxStieltjes && static_cast<std::size_t>(n + 1) < len; ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        dd term = stieltjes(n) / fact;
        z[n + 1] = (n % 2 == 0) ? term : -term;
    }
    std::vector<dd> f(len);
    f[0] = 1.0;
    for (int i = 0; i < k; ++i) f = series_mul(f, z);
    std::vector<dd> inv_s(len);
    for (std::size_t m = 0; m < len; ++m) inv_s[m] = (m % 2 == 0) ? 1.0 : -1.0;
    f = series_mul(f, inv_s);

    // zeta^k / s = w^-k F(w): the w^(-1-j) coefficient is F_{k-1-j}.
    MainTermPoly poly;
    poly.k = k;
    poly.order = order;
    dd jfact = 1.0;
    for (int j = 0; j < k; ++j) {
        if (j > 0) jfact *= static_cast<double>(j);
        poly.coeffs.push_back(f[k - 1 - j] / jfact);
    }
    for (int n = 0; n < k && n <= kMaxStieltjes; ++n) {
        poly.gammas.push_back(stieltjes(n));
        poly.gamma_tags.emplace_back("table-30");
    }
    return poly;
}

dd eval_poly(const std::vector<dd>& coeffs, const dd& L) {
    dd r = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) r = r * L + coeffs[i];
    return r;
}

dd main_term_value(int k, double x) {
    if (!(x >= 1.0)) throw DomainError("main term needs x >= 1");
    const MainTermPoly poly = main_term_coeffs(k);
    const dd X(x);
    return X * eval_poly(poly.coeffs, log(X));
}

MainTerm::MainTerm(MainTermPoly poly) : poly_(std::move(poly)) {
    std::vector<double> q(poly_.coeffs.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<double>(poly_.coeffs[i]);
    double fact = 1.0;
    for (int j = 0; j <= kLocalOrder; ++j) {
        if (j > 0) fact *= j;
        q_[j].resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) q_[j][i] = q[i] / fact;
        // Q_{j+1} = (1 - j) Q_j + Q_j'
        std::vector<double> next(q.size(), 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i] += (1.0 - j) * q[i];
            if (i > 0) next[i - 1] += static_cast<double>(i) * q[i];
        }
        q = std::move(next);
    }
}

dd MainTerm::value(const dd& x) const { return x * eval_poly(poly_.coeffs, log(x)); }

double MainTerm::derivative(double x) const {
    const double L = std::log(x);
    double r = 0.0;
    const auto& q1 = q_[1];
    for (std::size_t i = q1.size(); i-- > 0;) r = r * L + q1[i];
    return r;
}

LocalTaylor MainTerm::taylor(double c) const {
    LocalTaylor t;
    const dd C(c);
    const dd L = log(C);
    t.m0 = C * eval_poly(poly_.coeffs, L);
    t.m[0] = static_cast<double>(t.m0);
    const double l = static_cast<double>(L);
    double cp = 1.0;  // c^(1-j)
    for (int j = 1; j <= kLocalOrder; ++j) {
        const auto& qj = q_[j];
        double r = 0.0;
        for (std::size_t i = qj.size(); i-- > 0;) r = r * l + qj[i];
        t.m[j] = r * cp;
        cp /= c;
    }
    return t;
}

}  // namespace piltz

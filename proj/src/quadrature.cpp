#include "piltz/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "piltz/error.hpp"

namespace piltz {

namespace {

template <unsigned N>
QuadRule make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    QuadRule r;
    // Boost stores the non-negative half of the symmetric rule on [-1, 1].
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] == 0.0) continue;
        r.t.push_back(0.5 * (1.0 - x[i]));
        r.w.push_back(0.5 * w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.t.push_back(0.5 * (1.0 + x[i]));
        r.w.push_back(0.5 * w[i]);
    }
    return r;
}

}  // namespace

const QuadRule& gauss_rule(int order) {
    static const QuadRule r8 = make_rule<8>();
    static const QuadRule r16 = make_rule<16>();
    if (order == 8) return r8;
    if (order == 16) return r16;
    throw DomainError("Gauss-Legendre order must be 8 or 16");
}

}  // namespace piltz

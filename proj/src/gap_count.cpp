#include "piltz/gap_count.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "piltz/dd.hpp"
#include "piltz/error.hpp"
#include "piltz/random.hpp"

namespace piltz {

namespace {

// Relative error of (mu^(1/k) + alpha)^k in double-double: the root, one
// addition and k - 1 products each contribute a few units of 2^-104. The
// factor 64 k is a generous cover for all of them.
double distance_error(int k, double v) { return 64.0 * k * std::ldexp(1.0, -104) * v + 1e-300; }

double bound_value(int k, double W, double alpha, double rho) {
    return W * rho + std::pow(W, 2.0 / 3.0 - 1.0 / (3.0 * k)) * std::cbrt(alpha) +
           std::pow(W, 0.5 + 0.5 / k) / std::sqrt(alpha);
}

}  // namespace

std::vector<GapCountResult> count_near_integers_multi(int k, std::uint64_t W, double alpha,
                                                      const std::vector<double>& rhos, double alpha_constant) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (W < 1) throw DomainError("W must be >= 1");
    if (W > 1'000'000'000ULL) throw DomainError("W beyond double-double integrity (W <= 10^9)");
    const double Wd = static_cast<double>(W);
    if (!(alpha > 0.0) || alpha > alpha_constant * std::pow(Wd, 1.0 / k)) {
        throw DomainError("alpha must lie in (0, c W^(1/k)]");
    }
    for (double rho : rhos) {
        if (!(rho > 0.0) || rho > 0.5) throw DomainError("rho must lie in (0, 1/2]");
    }
    std::vector<GapCountResult> out(rhos.size());
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        out[i].k = k;
        out[i].W = W;
        out[i].alpha = alpha;
        out[i].rho = rhos[i];
        out[i].bound_value = bound_value(k, Wd, alpha, rhos[i]);
    }
    double max_err = 0.0;
    for (std::uint64_t mu = W + 1; mu <= 2 * W; ++mu) {
        const dd v = powi(nroot(dd(static_cast<double>(mu)), k) + alpha, k);
        const double dist = std::abs(static_cast<double>(v - floor(v + 0.5)));
        const double err = distance_error(k, static_cast<double>(v));
        max_err = std::max(max_err, err);
        if (err > 1e-10) throw ToleranceError("distance certificate above 1e-10");
        for (std::size_t i = 0; i < rhos.size(); ++i) {
            const double rho = rhos[i];
            if (rho == 0.5) {
                ++out[i].count;  // every real is within 1/2 of an integer
            } else if (std::abs(dist - rho) <= err) {
                ++out[i].uncertain;
            } else if (dist < rho) {
                ++out[i].count;
            }
        }
    }
    for (auto& r : out) {
        r.ratio = static_cast<double>(r.count) / r.bound_value;
        r.max_error = max_err;
    }
    return out;
}

GapCountResult count_near_integers(int k, std::uint64_t W, double alpha, double rho, double alpha_constant) {
    return count_near_integers_multi(k, W, alpha, {rho}, alpha_constant).front();
}

std::vector<double> AlphaSampler::draw(int k, std::uint64_t W) const {
    const double Wd = static_cast<double>(W);
    const double lo = std::log(std::pow(Wd, -0.5));
    const double hi = std::log(std::pow(Wd, 1.0 / k));
    std::mt19937_64 rng(seed ^ (W * 0x9e3779b97f4a7c15ULL));
    std::vector<double> a(count);
    for (auto& v : a) {
        double u = uniform01(rng);
        if (u == 0.0) u = 0.5;  // open interval
        v = std::exp(lo + u * (hi - lo));
    }
    return a;
}

GapSweep lemma_ratio_sweep(int k, const std::vector<std::uint64_t>& Ws, const AlphaSampler& alphas,
                           const std::vector<double>& rhos) {
    GapSweep s;
    for (std::uint64_t W : Ws) {
        for (double alpha : alphas.draw(k, W)) {
            for (auto& r : count_near_integers_multi(k, W, alpha, rhos)) {
                s.max_ratio = std::max(s.max_ratio, r.ratio);
                s.uncertain += r.uncertain;
                s.rows.push_back(r);
            }
        }
    }
    return s;
}

std::string gap_csv_header() { return "k,W,alpha,rho,count,bound,ratio,uncertain"; }

std::string gap_csv_row(const GapCountResult& r) {
    std::ostringstream o;
    o.precision(17);
    o << r.k << ',' << r.W << ',' << r.alpha << ',' << r.rho << ',' << r.count << ',' << r.bound_value << ','
      << r.ratio << ',' << r.uncertain;
    return o.str();
}

}  // namespace piltz

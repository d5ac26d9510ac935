#include "piltz/resonance.hpp"

#include <algorithm>
#include <cmath>

#include "piltz/divisor.hpp"
#include "piltz/error.hpp"
#include "piltz/parallel.hpp"
#include "piltz/random.hpp"

namespace piltz {

ResonanceParams ResonanceParams::from_Y(int k, double Y) {
    if (!(Y > 0.0)) throw DomainError("Y must be positive");
    ResonanceParams p;
    p.k = k;
    p.Y = Y;
    p.V = std::pow(Y / (2.0 * M_PI), k);
    return p;
}

dd resonance_phase(int k, std::uint64_t n, double x) {
    const dd nx = dd(static_cast<double>(n)) * x;
    return frac(nroot(nx, k) * static_cast<double>(k));
}

ResonanceSum::ResonanceSum(int k, std::uint64_t n_max) : k_(k), n_max_(n_max) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (n_max > 0) d_ = divisor_block(k, 1, n_max + 1, std::max<std::size_t>(kDefaultBlockSize, n_max)).values;
}

std::uint64_t ResonanceSum::last_index(double x, double V) const {
    if (!(x >= 1.0)) throw DomainError("Q_k needs x >= 1");
    if (!(V >= 0.0)) throw DomainError("Q_k needs V >= 0");
    const double r = std::floor(V / x);
    if (r > static_cast<double>(n_max_)) throw CoverageError("resonance sum needs d_k beyond its table");
    return static_cast<std::uint64_t>(r);
}

double ResonanceSum::term(std::uint64_t n, double x) const {
    const double phase = static_cast<double>(resonance_phase(k_, n, x));
    const double shift = (k_ - 3) * M_PI / 4.0;
    const double w = std::pow(static_cast<double>(n), -(k_ + 1.0) / (2.0 * k_));
    return static_cast<double>(d_[n - 1]) * w * std::cos(2.0 * M_PI * phase + shift);
}

double ResonanceSum::at(double x, double V) const {
    const std::uint64_t last = last_index(x, V);
    CompensatedSum s;
    for (std::uint64_t n = 1; n <= last; ++n) s.add(term(n, x));
    return std::pow(x, (k_ - 1.0) / (2.0 * k_)) / (M_PI * std::sqrt(static_cast<double>(k_))) * s.value();
}

double ResonanceSum::at_reversed(double x, double V) const {
    const std::uint64_t last = last_index(x, V);
    CompensatedSum s;
    for (std::uint64_t n = last; n >= 1; --n) s.add(term(n, x));
    return std::pow(x, (k_ - 1.0) / (2.0 * k_)) / (M_PI * std::sqrt(static_cast<double>(k_))) * s.value();
}

double ResonanceSum::abs_bound(double x, double V) const {
    const std::uint64_t last = last_index(x, V);
    CompensatedSum s;
    for (std::uint64_t n = 1; n <= last; ++n) {
        s.add(static_cast<double>(d_[n - 1]) * std::pow(static_cast<double>(n), -(k_ + 1.0) / (2.0 * k_)));
    }
    return std::pow(x, (k_ - 1.0) / (2.0 * k_)) / (M_PI * std::sqrt(static_cast<double>(k_))) * s.value();
}

double qk_sum(int k, double x, double V) {
    if (!(x >= 1.0)) throw DomainError("Q_k needs x >= 1");
    if (!(V >= 0.0)) throw DomainError("Q_k needs V >= 0");
    const auto last = static_cast<std::uint64_t>(std::floor(V / x));
    if (last == 0) return 0.0;
    return ResonanceSum(k, last).at(x, V);
}

QkCompareReport qk_delta_compare(const DeltaEvaluator& eval, double X, double Y, std::size_t samples,
                                 std::uint64_t seed) {
    if (!(X >= 1.0)) throw DomainError("X must be >= 1");
    if (!(Y > 0.0) || Y > X) throw DomainError("qk-compare needs 0 < Y <= X");
    if (samples == 0) throw DomainError("qk-compare needs at least one sample");
    if (2.0 * X > static_cast<double>(eval.coverage())) throw CoverageError("[X, 2X] beyond checkpoint coverage");
    const int k = eval.k();
    const ResonanceParams params = ResonanceParams::from_Y(k, Y);

    QkCompareReport r;
    r.k = k;
    r.X = X;
    r.Y = Y;
    r.V = params.V;
    r.samples = samples;

    std::mt19937_64 rng(seed);
    std::vector<double> xs(samples);
    const double width = X / static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i) xs[i] = X + (static_cast<double>(i) + uniform01(rng)) * width;
    const std::vector<double> deltas = eval.at_sorted(xs);

    const auto n_max = static_cast<std::uint64_t>(std::floor(params.V / X));
    const ResonanceSum q(k, n_max);
    CompensatedSum sd2, sr2, sq2, sdq;
    for (std::size_t i = 0; i < samples; ++i) {
        const double qv = n_max == 0 ? 0.0 : q.at(xs[i], params.V);
        const double res = deltas[i] - qv;
        r.rows.push_back({xs[i], deltas[i], qv, res});
        sd2.add(deltas[i] * deltas[i]);
        sr2.add(res * res);
        sq2.add(qv * qv);
        sdq.add(deltas[i] * qv);
    }
    const auto ns = static_cast<double>(samples);
    r.rms_delta = std::sqrt(sd2.value() / ns);
    r.rms_residual = std::sqrt(sr2.value() / ns);
    const double denom = std::sqrt(sd2.value() * sq2.value());
    r.correlation = denom > 0.0 ? sdq.value() / denom : 0.0;
    return r;
}

}  // namespace piltz

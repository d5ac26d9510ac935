#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "piltz/dd.hpp"
#include "piltz/delta.hpp"

namespace piltz {

struct ResonanceParams {
    int k = 0;
    double V = 0.0;
    std::optional<double> Y;

    /// V = (Y / 2 pi)^k.
    static ResonanceParams from_Y(int k, double Y);
};

/// frac(k (n x)^(1/k)), so the cosine argument is 2 pi times this.
dd resonance_phase(int k, std::uint64_t n, double x);

/// Q_k(x; V) with d_k(n) precomputed for n <= n_max.
class ResonanceSum {
public:
    ResonanceSum(int k, std::uint64_t n_max);

    int k() const { return k_; }
    std::uint64_t n_max() const { return n_max_; }
    double at(double x, double V) const;
    /// Same sum accumulated from the largest n down.
    double at_reversed(double x, double V) const;
    /// Triangle-inequality bound on |Q_k(x; V)|.
    double abs_bound(double x, double V) const;

private:
    double term(std::uint64_t n, double x) const;
    std::uint64_t last_index(double x, double V) const;

    int k_;
    std::uint64_t n_max_;
    std::vector<std::uint64_t> d_;  // d_[n - 1] = d_k(n)
};

double qk_sum(int k, double x, double V);

struct QkCompareRow {
    double x;
    double delta;
    double qk;
    double residual;
};

struct QkCompareReport {
    int k = 0;
    double X = 0.0;
    double Y = 0.0;
    double V = 0.0;
    std::size_t samples = 0;
    double rms_delta = 0.0;
    double rms_residual = 0.0;
    double correlation = 0.0;  // sum(D Q) / sqrt(sum D^2 sum Q^2)
    std::vector<QkCompareRow> rows;
};

/// One stratified sample per stratum of [X, 2X], seeded.
QkCompareReport qk_delta_compare(const DeltaEvaluator& eval, double X, double Y, std::size_t samples,
                                 std::uint64_t seed = 1);

}  // namespace piltz

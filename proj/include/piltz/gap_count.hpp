#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace piltz {

/// #{ W < mu <= 2W : ||(mu^(1/k) + alpha)^k|| <= rho } against
/// W rho + W^(2/3 - 1/(3k)) alpha^(1/3) + W^(1/2 + 1/(2k)) alpha^(-1/2).
struct GapCountResult {
    int k = 0;
    std::uint64_t W = 0;
    double alpha = 0.0;
    double rho = 0.0;
    std::uint64_t count = 0;
    double bound_value = 0.0;
    double ratio = 0.0;
    /// mu whose certified distance straddles rho; not in `count`.
    std::uint64_t uncertain = 0;
    double max_error = 0.0;  // largest distance error bound used
};

/// Upper end of the admissible alpha range is alpha_constant * W^(1/k).
inline constexpr double kAlphaConstant = 1.0;

GapCountResult count_near_integers(int k, std::uint64_t W, double alpha, double rho,
                                   double alpha_constant = kAlphaConstant);

/// Counts for several thresholds from one pass over mu.
std::vector<GapCountResult> count_near_integers_multi(int k, std::uint64_t W, double alpha,
                                                      const std::vector<double>& rhos,
                                                      double alpha_constant = kAlphaConstant);

/// Log-uniform draws in (W^(-1/2), W^(1/k)).
struct AlphaSampler {
    std::size_t count = 16;
    std::uint64_t seed = 1;
    std::vector<double> draw(int k, std::uint64_t W) const;
};

struct GapSweep {
    std::vector<GapCountResult> rows;
    double max_ratio = 0.0;
    std::uint64_t uncertain = 0;
};

GapSweep lemma_ratio_sweep(int k, const std::vector<std::uint64_t>& Ws, const AlphaSampler& alphas,
                           const std::vector<double>& rhos);

std::string gap_csv_header();
std::string gap_csv_row(const GapCountResult& r);

}  // namespace piltz

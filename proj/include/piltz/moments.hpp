#pragma once

#include <cstdint>
#include <string>

#include "piltz/delta.hpp"

namespace piltz {

enum class MomentKind { Power, DiffH, DiffMultT, SupDiffH, SaffariVaughan };
enum class MomentMode { Exact, Sample };

const char* kind_name(MomentKind k);
const char* mode_name(MomentMode m);
MomentMode parse_mode(const std::string& s);

struct MomentOptions {
    MomentMode mode = MomentMode::Exact;
    std::size_t samples = 10000;  // strata in sampling mode
    std::uint64_t seed = 1;
    unsigned threads = 1;
    int order = 8;  // Gauss-Legendre order per smooth piece (8 or 16)
};

/// (1/X) times an integral over [X, 2X].
struct MomentReport {
    int k = 0;
    double X = 0.0;
    MomentKind kind = MomentKind::Power;
    double param = 0.0;  // m, h, T or H
    double value = 0.0;
    /// Exact mode: 100 x the order-8 / order-16 gap on a 1% sample of
    /// pieces plus a rounding floor. Sampling mode: 95% half-width.
    double error = 0.0;
    MomentMode mode = MomentMode::Exact;
    double elapsed = 0.0;
    std::uint64_t units = 0;  // smooth pieces integrated, or samples
    std::string note;
};

std::string moment_csv_header();
std::string moment_csv_row(const MomentReport& r, bool zero_elapsed = false);

/// Exponents and margins of the bound shapes. All positive except delta >= 0.
struct BoundParams {
    double delta = 0.0;
    double epsilon = 0.01;
    double eta = 0.1;
    double xi = 0.01;
    void validate() const;
};

/// Unnormalized integral with its error estimate.
struct RawIntegral {
    double value = 0.0;
    double error = 0.0;
    double abs = 0.0;  // integral of |integrand|
    std::uint64_t units = 0;
};

RawIntegral integrate_power(const DeltaEvaluator& eval, double a, double b, int m, unsigned threads = 1,
                            int order = 8);
/// integral over [a, b] of (Delta(y) - Delta(x))^2, y = x + add + mult x.
RawIntegral integrate_shift(const DeltaEvaluator& eval, double a, double b, double add, double mult,
                            unsigned threads = 1, int order = 8);
/// integral over [a, b] of sup_{0 <= h <= H} (Delta(x + h) - Delta(x))^2.
RawIntegral integrate_sup(const DeltaEvaluator& eval, double a, double b, double H, unsigned threads = 1,
                          int order = 8);

/// sup_{0 <= h <= H} |Delta(x + h) - Delta(x)|, from the one-sided limits
/// at the integers of (x, x + H] and the endpoint x + H.
double sup_shift_at(const DeltaEvaluator& eval, double x, double H);
double sup_shift_at(PieceCursor& cursor, double x, double H);

MomentReport power_moment(const DeltaEvaluator& eval, double X, int m, const MomentOptions& opt = {});
MomentReport diff_mean_square(const DeltaEvaluator& eval, double X, double h, const MomentOptions& opt = {});
MomentReport mult_diff_mean_square(const DeltaEvaluator& eval, double X, double T, const MomentOptions& opt = {});
MomentReport sup_diff_mean_square(const DeltaEvaluator& eval, double X, double H, const MomentOptions& opt = {});

struct SaffariVaughanResult {
    double X = 0.0;
    double h = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    double tol = 0.0;  // relative slack actually applied
    bool ok = false;
    double elapsed = 0.0;
};

/// Both sides of
///   int_{X/2}^{X} |f(t+h) - f(t)|^2 dt
///     <= (2X/h) int_0^{8h/X} int_0^X |f(t + beta t) - f(t)|^2 dt dbeta
/// for f = Delta_k on t >= 1 and 0 below. The right side swaps the order of
/// integration so each piece is integrated exactly in beta;
/// ok compares with slack max(tol, combined quadrature error).
SaffariVaughanResult saffari_vaughan_check(const DeltaEvaluator& eval, double X, double h, double tol = 0.01,
                                           unsigned threads = 1);

}  // namespace piltz

#pragma once

#include <cstdint>
#include <vector>

#include "piltz/delta.hpp"

namespace piltz {

/// The threshold (C_k/2 - eta) x^((k-1)/2k) and the functions built on it:
///   G_k(x) = |Delta_k(x)| - threshold(x),
///   W_k(x) = G_k(x)^2 - sup_{0<=h<=H} (G_k(x+h) - G_k(x))^2 - (C_k x^((k-1)/2k) / 2)^2.
/// W_k(x) > 0 forces G_k > 0 on all of [x, x+H], so Delta_k keeps its sign there.
class Detector {
public:
    /// ck is normally the Euler-product value; 0 < eta < ck / 2.
    Detector(const DeltaEvaluator& eval, double ck, double eta);

    int k() const { return eval_->k(); }
    double ck() const { return ck_; }
    double eta() const { return eta_; }
    double exponent() const { return a_; }
    const DeltaEvaluator& evaluator() const { return *eval_; }

    double threshold(double x) const;
    double half_scale(double x) const;  // C_k x^a / 2
    double g_of(double delta, double x) const;

    double gk(double x) const;
    /// Exact sup over h: G_k is monotone on each sign-definite part of a
    /// unit piece, so the candidates are one-sided limits at integers, the
    /// ends x and x + H, and the zero of Delta_k inside a piece.
    double wk(double x, double H) const;
    /// True when every jump d_k(n), n in (x, x+H], is below 2 threshold(n).
    /// G_k > 0 rules out a continuous crossing; only a jump of at least
    /// 2 threshold can carry Delta_k from below -threshold to above it.
    /// For large x this always holds since d_k(n) = n^o(1), but at
    /// moderate x highly composite n break it.
    bool jump_guard(double x, double H) const;

private:
    const DeltaEvaluator* eval_;
    double ck_;
    double eta_;
    double a_;
    double tc_;  // C_k/2 - eta
};

/// Max and min of G_k over the part tau in [t0, t1] of a unit piece.
struct GRange {
    double max = 0.0;
    double min = 0.0;
};
GRange piece_g_range(const Detector& det, const UnitPiece& p, double t0, double t1);

struct IntervalRecord {
    int k = 0;
    double start = 0.0;
    double H = 0.0;
    double threshold_at_start = 0.0;
    double min_abs_delta = 0.0;
    int sign = 0;  // +1 or -1
    std::uint64_t sign_changes = 0;
    double witness_x = 0.0;
    double w_value = 0.0;
};

struct DetectionResult {
    int k = 0;
    double X = 0.0;
    double H = 0.0;
    double eta = 0.0;
    double ck = 0.0;
    double stride = 0.0;
    std::uint64_t candidates = 0;
    std::uint64_t positive = 0;       // candidates with W_k > 0 passing the jump guard
    std::uint64_t jump_rejected = 0;  // candidates with W_k > 0 failing it
    std::vector<IntervalRecord> intervals;
    double elapsed = 0.0;
};

/// Scans x = X, X + stride, ... up to 2X - H. Each x with W_k(x) > 0 and
/// a passing jump guard becomes [x, x + H] unless it meets the previous
/// interval. Every interval
/// is re-verified independently; a failure throws VerificationError.
DetectionResult detect_intervals(const DeltaEvaluator& eval, double X, double H, double eta, double ck,
                                 double stride = 0.0, unsigned threads = 1);

/// Independent check of [start, start + H]: an exact sign-change count and
/// |Delta_k| > threshold at every one-sided piece end. Fills sign_changes,
/// min_abs_delta and sign; returns false when either test fails.
bool verify_interval(const Detector& det, IntervalRecord& rec);

struct CensusSummary {
    std::uint64_t count = 0;
    double measure_scan = 0.0;   // stride x positive candidates
    double measure_union = 0.0;  // count x H
    double exponent = 0.0;       // log(count) / log(X), 0 without detections
    double reference_exponent = 37.0 / 96.0;
};

CensusSummary interval_census(const DetectionResult& r);

}  // namespace piltz

#include "piltz/detector.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

#include "piltz/error.hpp"
#include "piltz/parallel.hpp"

namespace piltz {

Detector::Detector(const DeltaEvaluator& eval, double ck, double eta)
    : eval_(&eval), ck_(ck), eta_(eta), a_((eval.k() - 1) / (2.0 * eval.k())), tc_(0.5 * ck - eta) {
    if (!(ck > 0.0)) throw DomainError("C_k must be positive");
    if (!(eta > 0.0) || !(eta < 0.5 * ck)) throw DomainError("eta must lie in (0, C_k / 2)");
}

double Detector::threshold(double x) const { return tc_ * std::pow(x, a_); }

double Detector::half_scale(double x) const { return 0.5 * ck_ * std::pow(x, a_); }

double Detector::g_of(double delta, double x) const { return std::abs(delta) - threshold(x); }

double Detector::gk(double x) const { return g_of(eval_->at(x), x); }

GRange piece_g_range(const Detector& det, const UnitPiece& p, double t0, double t1) {
    const double n = static_cast<double>(p.n);
    GRange r;
    const double g0 = det.g_of(p.at(t0), n + t0);
    r.max = r.min = g0;
    if (t1 > t0) {
        const double g1 = det.g_of(p.at(t1), n + t1);
        r.max = std::max(r.max, g1);
        r.min = std::min(r.min, g1);
        if (auto z = p.zero(); z && *z > t0 && *z < t1) r.min = std::min(r.min, -det.threshold(n + *z));
    }
    return r;
}

namespace {

struct Window {
    double g0 = 0.0;
    GRange range;
    bool big_jump = false;  // some d_k(n), n in (x, x+H], reaches 2 threshold(n)
};

bool big_jump(const Detector& det, const UnitPiece& p) {
    return static_cast<double>(p.d) >= 2.0 * det.threshold(static_cast<double>(p.n));
}

// G_k over [x, x + H] from three pieces: the partial first, the partial last,
// and the full ones between, read here through a cursor.
Window window_direct(const Detector& det, PieceCursor& cur, double x, double H) {
    const double e = x + H;
    const auto n0 = static_cast<std::uint64_t>(std::floor(x));
    const auto m = static_cast<std::uint64_t>(std::floor(e));
    Window w;
    const UnitPiece& first = cur.get(n0);
    const double tau = x - static_cast<double>(n0);
    w.g0 = det.g_of(first.at(tau), x);
    w.range = piece_g_range(det, first, tau, m > n0 ? 1.0 : e - static_cast<double>(n0));
    for (std::uint64_t n = n0 + 1; n <= m; ++n) {
        const UnitPiece& p = cur.get(n);
        w.big_jump = w.big_jump || big_jump(det, p);
        const GRange r = piece_g_range(det, p, 0.0, n == m ? e - static_cast<double>(m) : 1.0);
        w.range.max = std::max(w.range.max, r.max);
        w.range.min = std::min(w.range.min, r.min);
    }
    return w;
}

double w_from(const Detector& det, const Window& w, double x) {
    const double up = w.range.max - w.g0;
    const double down = w.g0 - w.range.min;
    const double sup = std::max(up, down);
    const double half = det.half_scale(x);
    return w.g0 * w.g0 - sup * sup - half * half;
}

// Sliding version for ascending x: full pieces enter monotone deques once.
class WindowScanner {
public:
    WindowScanner(const Detector& det, double H)
        : det_(&det), H_(H), feed_(det.evaluator()), left_(det.evaluator()), right_(det.evaluator()) {}

    Window at(double x) {
        const double e = x + H_;
        const auto n0 = static_cast<std::uint64_t>(std::floor(x));
        const auto m = static_cast<std::uint64_t>(std::floor(e));
        if (!started_) {
            pushed_ = n0;
            started_ = true;
        }
        for (std::uint64_t n = std::max(pushed_, n0) + 1; n < m; ++n) {
            const UnitPiece& p = feed_.get(n);
            if (big_jump(*det_, p)) bad_.push_back(n);
            const GRange r = piece_g_range(*det_, p, 0.0, 1.0);
            while (!hi_.empty() && hi_.back().second <= r.max) hi_.pop_back();
            hi_.emplace_back(n, r.max);
            while (!lo_.empty() && lo_.back().second >= r.min) lo_.pop_back();
            lo_.emplace_back(n, r.min);
            pushed_ = n;
        }
        pushed_ = std::max(pushed_, m > 0 ? m - 1 : 0);
        while (!hi_.empty() && hi_.front().first <= n0) hi_.pop_front();
        while (!lo_.empty() && lo_.front().first <= n0) lo_.pop_front();
        while (!bad_.empty() && bad_.front() <= n0) bad_.pop_front();

        Window w;
        const UnitPiece& first = left_.get(n0);
        const double tau = x - static_cast<double>(n0);
        w.g0 = det_->g_of(first.at(tau), x);
        w.range = piece_g_range(*det_, first, tau, 1.0);
        const UnitPiece& lp = right_.get(m);
        w.big_jump = !bad_.empty() || big_jump(*det_, lp);
        const GRange last = piece_g_range(*det_, lp, 0.0, e - static_cast<double>(m));
        w.range.max = std::max(w.range.max, last.max);
        w.range.min = std::min(w.range.min, last.min);
        if (!hi_.empty()) w.range.max = std::max(w.range.max, hi_.front().second);
        if (!lo_.empty()) w.range.min = std::min(w.range.min, lo_.front().second);
        return w;
    }

private:
    const Detector* det_;
    double H_;
    PieceCursor feed_;
    PieceCursor left_;
    PieceCursor right_;
    bool started_ = false;
    std::uint64_t pushed_ = 0;
    std::deque<std::pair<std::uint64_t, double>> hi_;
    std::deque<std::pair<std::uint64_t, double>> lo_;
    std::deque<std::uint64_t> bad_;
};

// On a piece where Delta_k < 0, G_k = -Delta_k - threshold rises only while
// f' exceeds the threshold slope. Both are checked at the scan ends; f' grows
// with x and the threshold slope decays, so that covers the range between.
void check_slopes(const Detector& det, double lo, double hi) {
    for (double y : {lo, hi}) {
        const double tslope = det.threshold(y) * det.exponent() / y;
        if (!(det.evaluator().main().derivative(y) > tslope)) {
            throw DomainError("threshold grows faster than the main term; pieces are not monotone");
        }
    }
}

}  // namespace

bool Detector::jump_guard(double x, double H) const {
    if (!(x >= 10.0)) throw DomainError("jump guard needs x >= 10");
    if (x + H > static_cast<double>(eval_->coverage())) throw CoverageError("[x, x+H] beyond checkpoint coverage");
    PieceCursor cur(*eval_);
    return !window_direct(*this, cur, x, H).big_jump;
}

double Detector::wk(double x, double H) const {
    if (!(H >= 0.0)) throw DomainError("H must be >= 0");
    if (!(x >= 10.0)) throw DomainError("W_k needs x >= 10");
    if (x + H > static_cast<double>(eval_->coverage())) throw CoverageError("[x, x+H] beyond checkpoint coverage");
    PieceCursor cur(*eval_);
    const Window w = window_direct(*this, cur, x, H);
    return w_from(*this, w, x);
}

bool verify_interval(const Detector& det, IntervalRecord& rec) {
    const DeltaEvaluator& eval = det.evaluator();
    const double lo = rec.start;
    const double hi = rec.start + rec.H;
    rec.sign_changes = count_sign_changes(eval, lo, hi);
    const auto n_lo = static_cast<std::uint64_t>(std::floor(lo));
    const auto n_hi = static_cast<std::uint64_t>(std::floor(hi));
    bool above = true;
    bool first = true;
    double min_abs = 0.0;
    int sign = 0;
    bool same_sign = true;
    auto check = [&](double v, double y) {
        const double a = std::abs(v);
        const int s = (v > 0.0) - (v < 0.0);
        if (first) {
            sign = s;
            min_abs = a;
            first = false;
        }
        if (s != sign) same_sign = false;
        min_abs = std::min(min_abs, a);
        if (!(a > det.threshold(y))) above = false;
    };
    for_each_piece(eval, n_lo, n_hi, [&](const UnitPiece& p) {
        const double n = static_cast<double>(p.n);
        const double t0 = p.n == n_lo ? lo - n : 0.0;
        const double t1 = p.n == n_hi ? hi - n : 1.0;
        check(p.at(t0), n + t0);
        if (t1 > t0) check(p.at(t1), n + t1);
    });
    rec.min_abs_delta = min_abs;
    rec.sign = sign;
    return above && same_sign && sign != 0 && rec.sign_changes == 0;
}

DetectionResult detect_intervals(const DeltaEvaluator& eval, double X, double H, double eta, double ck,
                                 double stride, unsigned threads) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(X >= 64.0)) throw DomainError("detector needs X >= 64");
    if (!(H >= 1.0) || H > X / 8.0) throw DomainError("H must lie in [1, X/8]");
    if (stride == 0.0) stride = H / 4.0;
    if (!(stride > 0.0)) throw DomainError("scan stride must be positive");
    if (stride > H) throw DomainError("scan stride must not exceed H");
    if (2.0 * X > static_cast<double>(eval.coverage())) throw CoverageError("[X, 2X] beyond checkpoint coverage");
    const Detector det(eval, ck, eta);
    check_slopes(det, X, 2.0 * X);

    DetectionResult res;
    res.k = eval.k();
    res.X = X;
    res.H = H;
    res.eta = eta;
    res.ck = ck;
    res.stride = stride;
    const auto J = static_cast<std::uint64_t>(std::floor((X - H) / stride)) + 1;
    res.candidates = J;

    // Chunks are independent scans; each candidate's W_k is an exact max/min
    // over the same piece values, so the split does not change any output.
    constexpr std::uint64_t kChunk = 4096;
    const std::size_t chunks = static_cast<std::size_t>((J + kChunk - 1) / kChunk);
    std::vector<std::vector<std::pair<std::uint64_t, double>>> hits(chunks);
    std::vector<std::uint64_t> rejected(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t c, unsigned) {
        WindowScanner scan(det, H);
        const std::uint64_t j1 = std::min<std::uint64_t>(J, (c + 1) * kChunk);
        for (std::uint64_t j = c * kChunk; j < j1; ++j) {
            const double x = X + static_cast<double>(j) * stride;
            const Window w = scan.at(x);
            // W_k > 0 needs G_k(x) > C_k x^a / 2; the cheap test goes first.
            if (!(w.g0 > det.half_scale(x))) continue;
            const double wv = w_from(det, w, x);
            if (!(wv > 0.0)) continue;
            if (w.big_jump) {
                ++rejected[c];
            } else {
                hits[c].emplace_back(j, wv);
            }
        }
    });

    for (auto r : rejected) res.jump_rejected += r;
    double end = -1.0;
    for (const auto& chunk : hits) {
        for (const auto& [j, wv] : chunk) {
            ++res.positive;
            const double x = X + static_cast<double>(j) * stride;
            if (x <= end) continue;
            IntervalRecord rec;
            rec.k = res.k;
            rec.start = x;
            rec.H = H;
            rec.threshold_at_start = det.threshold(x);
            rec.witness_x = x;
            rec.w_value = wv;
            if (!verify_interval(det, rec)) {
                throw VerificationError("interval at x = " + std::to_string(x) + " failed re-verification");
            }
            res.intervals.push_back(rec);
            end = x + H;
        }
    }
    res.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

CensusSummary interval_census(const DetectionResult& r) {
    CensusSummary s;
    s.count = r.intervals.size();
    s.measure_scan = r.stride * static_cast<double>(r.positive);
    s.measure_union = r.H * static_cast<double>(s.count);
    s.exponent = s.count > 0 ? std::log(static_cast<double>(s.count)) / std::log(r.X) : 0.0;
    return s;
}

}  // namespace piltz

#include "piltz/delta.hpp"

#include <cmath>
#include <limits>

#include "piltz/error.hpp"

namespace piltz {

const char* side_name(Side s) {
    switch (s) {
        case Side::Right: return "right";
        case Side::Left: return "left";
        case Side::Midpoint: return "midpoint";
    }
    return "right";
}

Side parse_side(const std::string& s) {
    if (s == "right") return Side::Right;
    if (s == "left") return Side::Left;
    if (s == "midpoint" || s == "mid") return Side::Midpoint;
    throw DomainError("side must be right, left or midpoint");
}

double UnitPiece::at(double tau) const {
    if (local) {
        const double s = tau - 0.5;
        double r = 0.0;
        for (int j = kLocalOrder; j >= 1; --j) r = (r + m[j]) * s;
        return d0 - r;
    }
    return static_cast<double>(s_dd - main->value(dd(static_cast<double>(n)) + tau));
}

double UnitPiece::slope(double tau) const {
    if (local) {
        const double s = tau - 0.5;
        double r = 0.0;
        for (int j = kLocalOrder; j >= 1; --j) r = r * s + j * m[j];
        return -r;
    }
    return -main->derivative(static_cast<double>(n) + tau);
}

std::optional<double> UnitPiece::zero() const {
    double a = 0.0;
    double b = 1.0;
    double fa = at(a);
    double fb = at(b);
    if (!(fa > 0.0 && fb < 0.0)) return std::nullopt;
    double t = fa / (fa - fb);
    for (int it = 0; it < 100; ++it) {
        const double ft = at(t);
        if (ft == 0.0) return t;
        if (ft > 0.0) {
            a = t;
        } else {
            b = t;
        }
        if (b - a < 4 * std::numeric_limits<double>::epsilon()) break;
        double next = t - ft / slope(t);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        t = next;
    }
    return 0.5 * (a + b);
}

DeltaEvaluator::DeltaEvaluator(const Summatory& table) : table_(&table), main_(table.k()) {}

double DeltaEvaluator::from_sum(u128 S, double x, double minus) const {
    dd s = from_u128(S);
    if (minus != 0.0) s -= minus;
    return static_cast<double>(s - main_.value(x));
}

double DeltaEvaluator::at(double x, Side side) const {
    if (!(x >= 1.0)) throw DomainError("Delta_k needs x >= 1");
    if (x > static_cast<double>(coverage())) throw CoverageError("x beyond checkpoint coverage");
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    const u128 S = table_->at(n);
    if (static_cast<double>(n) != x || side == Side::Right) return from_sum(S, x, 0.0);
    const double d = static_cast<double>(table_->d(n));
    return from_sum(S, x, side == Side::Left ? d : 0.5 * d);
}

double DeltaEvaluator::star(std::uint64_t n) const {
    if (n == 0) throw DomainError("Delta_k* needs n >= 1");
    return at(static_cast<double>(n), Side::Midpoint);
}

UnitPiece DeltaEvaluator::piece(std::uint64_t n, u128 S, std::uint64_t d) const {
    UnitPiece p;
    p.n = n;
    p.S = S;
    p.d = d;
    p.main = &main_;
    p.s_dd = from_u128(S);
    const double c = static_cast<double>(n) + 0.5;
    if (c >= kLocalTaylorMin) {
        const LocalTaylor t = main_.taylor(c);
        p.local = true;
        p.d0 = static_cast<double>(p.s_dd - t.m0);
        p.m = t.m;
    }
    return p;
}

UnitPiece DeltaEvaluator::piece(std::uint64_t n) const { return piece(n, table_->at(n), table_->d(n)); }

std::vector<double> DeltaEvaluator::at_sorted(const std::vector<double>& xs, Side side) const {
    std::vector<double> out;
    out.reserve(xs.size());
    const std::uint64_t stride = table_->checkpoints().stride;
    DivisorSieve::Workspace ws;
    bool have = false;
    std::uint64_t n_cur = 0;
    u128 s_cur = 0;
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
        if (x < prev) throw DomainError("points must be ascending");
        prev = x;
        if (!(x >= 1.0)) throw DomainError("Delta_k needs x >= 1");
        if (x > static_cast<double>(coverage())) throw CoverageError("x beyond checkpoint coverage");
        const auto n = static_cast<std::uint64_t>(std::floor(x));
        if (have && n - n_cur <= n % stride) {
            s_cur += table_->sieve().range_sum(n_cur + 1, n + 1, ws);
        } else {
            s_cur = table_->at(n);
        }
        n_cur = n;
        have = true;
        double minus = 0.0;
        if (static_cast<double>(n) == x && side != Side::Right) {
            const double d = static_cast<double>(table_->d(n));
            minus = side == Side::Left ? d : 0.5 * d;
        }
        out.push_back(from_sum(s_cur, x, minus));
    }
    return out;
}

double delta_at(const DeltaEvaluator& eval, double x, Side side) { return eval.at(x, side); }

double delta_star(const DeltaEvaluator& eval, std::uint64_t n) { return eval.star(n); }

void for_each_piece(const DeltaEvaluator& eval, std::uint64_t first, std::uint64_t last,
                    const std::function<void(const UnitPiece&)>& emit) {
    if (last < first) return;
    SummatoryStream stream(eval.table(), first, last);
    while (!stream.done()) {
        const auto item = stream.next();
        emit(eval.piece(item.n, item.S, item.d));
    }
}

DeltaStreamSummary delta_stream(const DeltaEvaluator& eval, double X, double span,
                                const std::function<void(const UnitPiece&)>& emit) {
    if (!(X >= 1.0) || !(span >= 0.0)) throw DomainError("delta stream needs X >= 1 and span >= 0");
    const double end = X + span;
    if (end > static_cast<double>(eval.coverage())) throw CoverageError("stream range beyond checkpoint coverage");
    const auto first = static_cast<std::uint64_t>(std::floor(X));
    const auto last_int = static_cast<std::uint64_t>(std::floor(end));
    // [last_int, last_int + 1) meets [X, end] in positive length only if end is not an integer.
    const std::uint64_t last_piece = (static_cast<double>(last_int) == end) ? last_int - 1 : last_int;

    DeltaStreamSummary summary;
    summary.first_n = first;
    summary.last_n = last_piece;
    if (span == 0.0) return summary;
    SummatoryStream stream(eval.table(), first, last_int);
    while (!stream.done()) {
        const auto item = stream.next();
        if (item.n > first) summary.increment += item.d;
        if (item.n > last_piece) continue;
        emit(eval.piece(item.n, item.S, item.d));
        ++summary.intervals;
    }
    return summary;
}

PieceCursor::PieceCursor(const DeltaEvaluator& eval, std::size_t buffer)
    : eval_(&eval), buffer_(std::min(buffer, eval.table().sieve().block_size())) {}

std::uint64_t PieceCursor::d_at(std::uint64_t n) {
    if (buf_.empty() || n < buf_lo_ || n >= buf_lo_ + buf_.size()) {
        const std::uint64_t hi = std::min<std::uint64_t>(n + buffer_, eval_->coverage() + 1);
        buf_.resize(hi - n);
        eval_->table().sieve().fill(n, hi, buf_, ws_);
        buf_lo_ = n;
    }
    return buf_[n - buf_lo_];
}

const UnitPiece& PieceCursor::get(std::uint64_t n) {
    if (piece_valid_ && piece_.n == n) return piece_;
    if (n == 0) throw DomainError("pieces start at n = 1");
    eval_->table().require(n);
    if (have_ && n < n_cur_) {
        if (!buf_.empty() && n >= buf_lo_ && n_cur_ < buf_lo_ + buf_.size()) {
            while (n_cur_ > n) s_cur_ -= buf_[n_cur_-- - buf_lo_];
        } else {
            have_ = false;
        }
    }
    const std::uint64_t stride = eval_->table().checkpoints().stride;
    if (!have_ || n - n_cur_ > n % stride + buffer_) {
        s_cur_ = eval_->table().at(n);
        n_cur_ = n;
        have_ = true;
    }
    while (n_cur_ < n) s_cur_ += d_at(++n_cur_);
    piece_ = eval_->piece(n, s_cur_, d_at(n));
    piece_valid_ = true;
    return piece_;
}

std::uint64_t count_sign_changes(const DeltaEvaluator& eval, double lo, double hi) {
    if (!(lo >= 10.0)) throw DomainError("sign-change count needs lo >= 10");
    if (!(hi > lo)) throw DomainError("sign-change count needs hi > lo");
    if (hi > static_cast<double>(eval.coverage())) throw CoverageError("range beyond checkpoint coverage");
    const auto n_lo = static_cast<std::uint64_t>(std::floor(lo));
    const auto n_hi = static_cast<std::uint64_t>(std::floor(hi));
    std::uint64_t changes = 0;
    int last_sign = 0;
    auto push = [&](double v) {
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) return;
        if (last_sign != 0 && s != last_sign) ++changes;
        last_sign = s;
    };
    for_each_piece(eval, n_lo, n_hi, [&](const UnitPiece& p) {
        const double t0 = p.n == n_lo ? lo - static_cast<double>(n_lo) : 0.0;
        const double t1 = p.n == n_hi ? hi - static_cast<double>(n_hi) : 1.0;
        push(p.at(t0));
        if (t1 > t0) push(p.at(t1));
    });
    return changes;
}

}  // namespace piltz

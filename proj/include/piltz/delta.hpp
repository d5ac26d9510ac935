#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "piltz/checkpoint.hpp"
#include "piltz/dd.hpp"
#include "piltz/main_term.hpp"

namespace piltz {

enum class Side { Right, Left, Midpoint };

const char* side_name(Side s);
Side parse_side(const std::string& s);

struct DeltaSample {
    double x = 0.0;
    double value = 0.0;
    Side side = Side::Right;
};

/// Below this centre the piece falls back to direct double-double
/// evaluation of the main term instead of its local Taylor expansion.
inline constexpr double kLocalTaylorMin = 64.0;

/// Delta_k on [n, n+1): the constant S_k(n) minus the main term.
/// Parametrized by tau in [0, 1]; at(1) is the left limit at n+1.
struct UnitPiece {
    std::uint64_t n = 0;
    u128 S = 0;
    std::uint64_t d = 0;  // d_k(n), the jump at n

    double at(double tau) const;
    double right() const { return at(0.0); }
    double left_end() const { return at(1.0); }
    /// d/dtau; negative once n >= 10.
    double slope(double tau) const;
    /// tau in (0,1) with at(tau) = 0 when the piece crosses zero downwards.
    std::optional<double> zero() const;

    bool local = false;
    double d0 = 0.0;                           // S - f(n + 1/2)
    std::array<double, kLocalOrder + 1> m{};   // Taylor coefficients in tau - 1/2
    dd s_dd;
    const MainTerm* main = nullptr;
};

class DeltaEvaluator {
public:
    explicit DeltaEvaluator(const Summatory& table);

    int k() const { return main_.k(); }
    std::uint64_t coverage() const { return table_->coverage(); }
    const Summatory& table() const { return *table_; }
    const MainTerm& main() const { return main_; }

    double at(double x, Side side = Side::Right) const;
    double star(std::uint64_t n) const;

    UnitPiece piece(std::uint64_t n, u128 S, std::uint64_t d) const;
    UnitPiece piece(std::uint64_t n) const;

    /// Delta_k at ascending points, sharing sieve work between neighbours.
    std::vector<double> at_sorted(const std::vector<double>& xs, Side side = Side::Right) const;

private:
    double from_sum(u128 S, double x, double minus) const;

    const Summatory* table_;
    MainTerm main_;
};

double delta_at(const DeltaEvaluator& eval, double x, Side side = Side::Right);
double delta_star(const DeltaEvaluator& eval, std::uint64_t n);

struct DeltaStreamSummary {
    std::uint64_t intervals = 0;
    std::uint64_t first_n = 0;
    std::uint64_t last_n = 0;
    u128 increment = 0;  // S_k(floor(X + span)) - S_k(floor(X))
};

/// Visits every unit interval [n, n+1) meeting [X, X + span] in a set of
/// positive length, ascending.
DeltaStreamSummary delta_stream(const DeltaEvaluator& eval, double X, double span,
                                const std::function<void(const UnitPiece&)>& emit);

/// Pieces for n in [first, last], ascending.
void for_each_piece(const DeltaEvaluator& eval, std::uint64_t first, std::uint64_t last,
                    const std::function<void(const UnitPiece&)>& emit);

/// Pieces on demand, cheapest for nondecreasing n. Short moves reuse the
/// running sum (backwards only within the sieved buffer); long jumps
/// restart from the nearest checkpoint.
class PieceCursor {
public:
    explicit PieceCursor(const DeltaEvaluator& eval, std::size_t buffer = 1 << 16);

    const UnitPiece& get(std::uint64_t n);

private:
    std::uint64_t d_at(std::uint64_t n);

    const DeltaEvaluator* eval_;
    std::size_t buffer_;
    bool have_ = false;
    std::uint64_t n_cur_ = 0;
    u128 s_cur_ = 0;
    UnitPiece piece_;
    bool piece_valid_ = false;
    std::uint64_t buf_lo_ = 0;
    std::vector<std::uint64_t> buf_;
    DivisorSieve::Workspace ws_;
};

/// Sign changes of Delta_k on [lo, hi]. Zeros are skipped, so a touch
/// without crossing does not count.
std::uint64_t count_sign_changes(const DeltaEvaluator& eval, double lo, double hi);

}  // namespace piltz

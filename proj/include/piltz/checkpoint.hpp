#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "piltz/dd.hpp"
#include "piltz/divisor.hpp"

namespace piltz {

inline constexpr std::uint64_t kDefaultStride = 1'000'000;
inline constexpr int kCheckpointFormatVersion = 1;

/// Exact prefix sums S_k(n) at every multiple of `stride` up to `limit`.
/// Points up to `limit` are covered: a query reads the entry at or below it
/// and sieves the remainder.
struct SummatoryCheckpoint {
    int k = 0;
    std::uint64_t stride = 0;
    std::uint64_t limit = 0;
    std::vector<std::pair<std::uint64_t, u128>> entries;
    std::string source = "memory";  // provenance: file path or "memory"
    std::string checksum;           // FNV-1a of the serialized payload, hex
};

struct CheckpointBuildOptions {
    unsigned threads = 1;
    std::size_t block_size = kDefaultBlockSize;
    /// Continue from a partially built table with the same k and stride.
    const SummatoryCheckpoint* resume = nullptr;
    /// Called with the table built so far after every `progress_every` strides.
    std::function<void(const SummatoryCheckpoint&)> on_progress;
    std::size_t progress_every = 256;
};

SummatoryCheckpoint build_checkpoints(int k, std::uint64_t limit, std::uint64_t stride,
                                      const CheckpointBuildOptions& options = {});

/// CSV payload followed by the checksum line.
std::string serialize_checkpoints(const SummatoryCheckpoint& cp);
SummatoryCheckpoint parse_checkpoints(const std::string& text, const std::string& source = "memory");

/// Writes to a temporary sibling and renames it into place.
void save_checkpoints(const SummatoryCheckpoint& cp, const std::filesystem::path& path);
SummatoryCheckpoint load_checkpoints(const std::filesystem::path& path);

/// Recomputes a random `fraction` of the strides (at least one) and
/// compares with the stored sums. Returns the number of strides checked;
/// throws VerificationError on mismatch.
std::size_t verify_checkpoints(const SummatoryCheckpoint& cp, double fraction, std::uint64_t seed);

/// Content-addressed name: (k, stride, limit, format version).
std::string checkpoint_filename(int k, std::uint64_t stride, std::uint64_t limit);

/// Reuses `cache_dir/checkpoint_filename(...)` when present and valid,
/// otherwise builds it (resuming from a `.partial` file) and saves it.
SummatoryCheckpoint load_or_build_checkpoints(const std::filesystem::path& cache_dir, int k,
                                              std::uint64_t limit, std::uint64_t stride,
                                              unsigned threads, bool* built = nullptr);

/// Exact S_k(n) queries backed by a checkpoint table.
class Summatory {
public:
    explicit Summatory(SummatoryCheckpoint cp, std::size_t block_size = kDefaultBlockSize);

    int k() const { return cp_.k; }
    std::uint64_t coverage() const { return cp_.limit; }
    const SummatoryCheckpoint& checkpoints() const { return cp_; }
    const DivisorSieve& sieve() const { return sieve_; }

    /// S_k(n); S_k(0) = 0.
    u128 at(std::uint64_t n) const;
    std::uint64_t d(std::uint64_t n) const;

    /// Throws CoverageError unless n <= coverage().
    void require(std::uint64_t n) const;

private:
    SummatoryCheckpoint cp_;
    DivisorSieve sieve_;
};

/// S_k(floor(x)) for real x in [1, coverage].
u128 summatory(int k, double x, const Summatory& table);

/// Ascending (n, S_k(n), d_k(n)) over [first, last].
class SummatoryStream {
public:
    struct Item {
        std::uint64_t n;
        u128 S;
        std::uint64_t d;
    };

    SummatoryStream(const Summatory& table, std::uint64_t first, std::uint64_t last);

    bool done() const { return next_n_ > last_; }
    Item next();

private:
    void refill();

    const Summatory* table_;
    std::uint64_t last_;
    std::uint64_t next_n_;
    u128 running_;
    std::uint64_t buf_lo_ = 0;
    std::vector<std::uint64_t> buf_;
    std::size_t buf_len_ = 0;
    DivisorSieve::Workspace ws_;
};

}  // namespace piltz

#include "piltz/checkpoint.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "piltz/error.hpp"
#include "piltz/int128.hpp"
#include "piltz/parallel.hpp"

namespace piltz {

namespace {

constexpr const char* kChecksumPrefix = "checksum,fnv1a64,";

std::string payload_of(const SummatoryCheckpoint& cp) {
    std::string out;
    out.reserve(48 * (cp.entries.size() + 3));
    out += "k,stride,limit\n";
    out += std::to_string(cp.k) + "," + std::to_string(cp.stride) + "," + std::to_string(cp.limit) + "\n";
    out += "n,S\n";
    for (const auto& [n, s] : cp.entries) {
        out += std::to_string(n);
        out += ',';
        out += u128_to_string(s);
        out += '\n';
    }
    return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    u128 v = u128_from_string(s);
    if (v > UINT64_MAX) throw IoError(std::string("checkpoint field out of range: ") + what);
    return static_cast<std::uint64_t>(v);
}

void validate_shape(int k, std::uint64_t limit, std::uint64_t stride) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (stride == 0) throw DomainError("stride must be positive");
    if (limit < 1) throw DomainError("checkpoint limit must be >= 1");
    // 128-bit accumulation cannot overflow for any 64-bit limit with d_k < 2^64.
}

}  // namespace

SummatoryCheckpoint build_checkpoints(int k, std::uint64_t limit, std::uint64_t stride,
                                      const CheckpointBuildOptions& options) {
    validate_shape(k, limit, stride);
    const std::uint64_t total = limit / stride;
    if (total > 50'000'000) throw DomainError("stride too small: too many checkpoint entries");

    SummatoryCheckpoint cp;
    cp.k = k;
    cp.stride = stride;
    cp.limit = limit;
    if (options.resume != nullptr) {
        const auto& r = *options.resume;
        if (r.k != k || r.stride != stride) throw DomainError("resume table has a different k or stride");
        cp.entries = r.entries;
        if (cp.entries.size() > total) cp.entries.resize(total);
    }
    cp.entries.reserve(total);

    DivisorSieve sieve(k, limit + 2, options.block_size);
    std::vector<DivisorSieve::Workspace> workspaces(std::max(1U, options.threads));
    const std::size_t batch = std::max<std::size_t>(1, options.progress_every);

    while (cp.entries.size() < total) {
        const std::size_t first = cp.entries.size();
        const std::size_t count = std::min<std::size_t>(batch, total - first);
        std::vector<u128> sums(count);
        parallel_for(count, options.threads, [&](std::size_t i, unsigned worker) {
            const std::uint64_t j = first + i;
            sums[i] = sieve.range_sum(j * stride + 1, (j + 1) * stride + 1, workspaces[worker]);
        });
        // Single writer, ascending index order.
        u128 running = cp.entries.empty() ? 0 : cp.entries.back().second;
        for (std::size_t i = 0; i < count; ++i) {
            running += sums[i];
            cp.entries.emplace_back((first + i + 1) * stride, running);
        }
        if (options.on_progress) {
            SummatoryCheckpoint partial = cp;
            partial.limit = cp.entries.size() * stride;
            options.on_progress(partial);
        }
    }
    cp.checksum = hex64(fnv1a64(payload_of(cp)));
    return cp;
}

std::string serialize_checkpoints(const SummatoryCheckpoint& cp) {
    std::string payload = payload_of(cp);
    return payload + kChecksumPrefix + hex64(fnv1a64(payload)) + "\n";
}

SummatoryCheckpoint parse_checkpoints(const std::string& text, const std::string& source) {
    const std::size_t tail = text.rfind(kChecksumPrefix);
    if (tail == std::string::npos || (tail != 0 && text[tail - 1] != '\n')) {
        throw IoError("checkpoint file has no checksum line: " + source);
    }
    const std::string payload = text.substr(0, tail);
    std::string stored = text.substr(tail + std::char_traits<char>::length(kChecksumPrefix));
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
    const std::string actual = hex64(fnv1a64(payload));
    if (stored != actual) throw IoError("checkpoint checksum mismatch in " + source);

    std::istringstream in(payload);
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) throw IoError(std::string("truncated checkpoint file, missing ") + what);
    };
    next_line("header");
    if (line != "k,stride,limit") throw IoError("bad checkpoint header in " + source);
    next_line("parameters");
    SummatoryCheckpoint cp;
    {
        std::istringstream fields(line);
        std::string a, b, c;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c)) {
            throw IoError("bad checkpoint parameter line in " + source);
        }
        cp.k = static_cast<int>(parse_u64(a, "k"));
        cp.stride = parse_u64(b, "stride");
        cp.limit = parse_u64(c, "limit");
    }
    validate_shape(cp.k, cp.limit, cp.stride);
    next_line("row header");
    if (line != "n,S") throw IoError("bad checkpoint row header in " + source);
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("bad checkpoint row in " + source);
        const std::uint64_t n = parse_u64(line.substr(0, comma), "n");
        const u128 s = u128_from_string(line.substr(comma + 1));
        const std::uint64_t expected_n = (cp.entries.size() + 1) * cp.stride;
        if (n != expected_n) throw IoError("checkpoint rows out of sequence in " + source);
        if (!cp.entries.empty() && s <= cp.entries.back().second) {
            throw IoError("checkpoint sums not increasing in " + source);
        }
        cp.entries.emplace_back(n, s);
    }
    if (cp.entries.size() != cp.limit / cp.stride) throw IoError("checkpoint row count mismatch in " + source);
    cp.source = source;
    cp.checksum = actual;
    return cp;
}

void save_checkpoints(const SummatoryCheckpoint& cp, const std::filesystem::path& path) {
    const std::string text = serialize_checkpoints(cp);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

SummatoryCheckpoint load_checkpoints(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("missing checkpoint file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_checkpoints(buf.str(), path.string());
}

std::size_t verify_checkpoints(const SummatoryCheckpoint& cp, double fraction, std::uint64_t seed) {
    const std::size_t total = cp.entries.size();
    if (total == 0) return 0;
    auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total)));
    count = std::clamp<std::size_t>(count, 1, total);

    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (total - i));
        std::swap(idx[i], idx[j]);
    }
    DivisorSieve sieve(cp.k, cp.limit + 2);
    DivisorSieve::Workspace ws;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = idx[i];
        const std::uint64_t hi = cp.entries[j].first;
        const std::uint64_t lo = hi - cp.stride;
        const u128 before = j == 0 ? 0 : cp.entries[j - 1].second;
        if (cp.entries[j].second - before != sieve.range_sum(lo + 1, hi + 1, ws)) {
            throw VerificationError("checkpoint block sum mismatch at n = " + std::to_string(hi));
        }
    }
    return count;
}

std::string checkpoint_filename(int k, std::uint64_t stride, std::uint64_t limit) {
    return "piltz_k" + std::to_string(k) + "_s" + std::to_string(stride) + "_l" + std::to_string(limit) +
           "_v" + std::to_string(kCheckpointFormatVersion) + ".csv";
}

SummatoryCheckpoint load_or_build_checkpoints(const std::filesystem::path& cache_dir, int k,
                                              std::uint64_t limit, std::uint64_t stride,
                                              unsigned threads, bool* built) {
    std::filesystem::create_directories(cache_dir);
    const auto path = cache_dir / checkpoint_filename(k, stride, limit);
    if (built != nullptr) *built = false;
    if (std::filesystem::exists(path)) {
        try {
            return load_checkpoints(path);
        } catch (const IoError&) {
            // Corrupt or truncated file: rebuild below.
        }
    }
    auto partial_path = path;
    partial_path += ".partial";
    SummatoryCheckpoint resume;
    CheckpointBuildOptions options;
    options.threads = threads;
    if (std::filesystem::exists(partial_path)) {
        try {
            resume = load_checkpoints(partial_path);
            if (resume.k == k && resume.stride == stride) options.resume = &resume;
        } catch (const IoError&) {
        }
    }
    options.on_progress = [&](const SummatoryCheckpoint& partial) { save_checkpoints(partial, partial_path); };
    SummatoryCheckpoint cp = build_checkpoints(k, limit, stride, options);
    save_checkpoints(cp, path);
    std::filesystem::remove(partial_path);
    cp.source = path.string();
    if (built != nullptr) *built = true;
    return cp;
}

Summatory::Summatory(SummatoryCheckpoint cp, std::size_t block_size)
    : cp_(std::move(cp)), sieve_(cp_.k, cp_.limit + 2, block_size) {}

void Summatory::require(std::uint64_t n) const {
    if (n > cp_.limit) {
        throw CoverageError("n = " + std::to_string(n) + " beyond checkpoint coverage " +
                            std::to_string(cp_.limit));
    }
}

u128 Summatory::at(std::uint64_t n) const {
    require(n);
    const std::uint64_t j = n / cp_.stride;
    const std::uint64_t base = j * cp_.stride;
    u128 s = j == 0 ? 0 : cp_.entries[j - 1].second;
    DivisorSieve::Workspace ws;
    return s + sieve_.range_sum(base + 1, n + 1, ws);
}

std::uint64_t Summatory::d(std::uint64_t n) const {
    require(n);
    return sieve_.block(n, n + 1).values[0];
}

u128 summatory(int k, double x, const Summatory& table) {
    if (k != table.k()) throw DomainError("summatory table built for a different k");
    if (!(x >= 1.0)) throw DomainError("summatory needs x >= 1");
    if (x > static_cast<double>(table.coverage()) + 1.0) throw CoverageError("x beyond checkpoint coverage");
    return table.at(static_cast<std::uint64_t>(std::floor(x)));
}

SummatoryStream::SummatoryStream(const Summatory& table, std::uint64_t first, std::uint64_t last)
    : table_(&table), last_(last), next_n_(first) {
    if (first == 0) throw DomainError("stream must start at n >= 1");
    if (last < first) throw DomainError("empty stream range");
    table.require(last);
    running_ = table.at(first - 1);
}

void SummatoryStream::refill() {
    const std::uint64_t lo = next_n_;
    const std::uint64_t hi = std::min<std::uint64_t>(last_ + 1, lo + table_->sieve().block_size());
    buf_.resize(hi - lo);
    table_->sieve().fill(lo, hi, buf_, ws_);
    buf_lo_ = lo;
    buf_len_ = hi - lo;
}

SummatoryStream::Item SummatoryStream::next() {
    if (done()) throw CoverageError("summatory stream exhausted");
    if (next_n_ >= buf_lo_ + buf_len_) refill();
    const std::uint64_t d = buf_[next_n_ - buf_lo_];
    running_ += d;
    return {next_n_++, running_, d};
}

}  // namespace piltz

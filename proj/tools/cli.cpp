#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "piltz/checkpoint.hpp"
#include "piltz/constants.hpp"
#include "piltz/delta.hpp"
#include "piltz/detector.hpp"
#include "piltz/error.hpp"
#include "piltz/gap_count.hpp"
#include "piltz/int128.hpp"
#include "piltz/main_term.hpp"
#include "piltz/moments.hpp"
#include "piltz/resonance.hpp"

#ifndef PILTZ_VERSION
#define PILTZ_VERSION "dev"
#endif

namespace piltz::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Integer-valued flags also take 1e6-style input.
std::uint64_t parse_count(const std::string& s, const char* flag) {
    std::size_t pos = 0;
    try {
        const unsigned long long v = std::stoull(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    double d = 0.0;
    try {
        d = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || !(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
        throw DomainError(std::string(flag) + " needs a nonnegative integer, got '" + s + "'");
    }
    return static_cast<std::uint64_t>(d);
}

// Checkpoints are content-addressed by limit, so requests are rounded up to
// a few canonical sizes and nearby runs share a file.
std::pair<std::uint64_t, std::uint64_t> table_shape(double needed) {
    const auto need = static_cast<std::uint64_t>(std::ceil(std::max(needed, 16.0))) + 1;
    std::uint64_t stride = 100;
    if (need > 100'000) stride = 10'000;
    if (need > 10'000'000) stride = kDefaultStride;
    const std::uint64_t limit = (need + stride - 1) / stride * stride;
    return {stride, limit};
}

struct Common {
    int k = 3;
    unsigned threads = 1;
    std::string cache_dir;
    std::string out;
    bool reproducible = false;
};

struct Table {
    SummatoryCheckpoint cp;
    std::unique_ptr<Summatory> sum;
    std::unique_ptr<DeltaEvaluator> eval;
    bool built = false;
};

std::string resolve_cache_dir(const Common& c) {
    if (!c.cache_dir.empty()) return c.cache_dir;
    if (const char* env = std::getenv(kCacheEnv); env != nullptr && *env != '\0') return env;
    return {};
}

std::unique_ptr<Table> open_table(const Common& c, double needed) {
    auto [stride, limit] = table_shape(needed);
    auto t = std::make_unique<Table>();
    const std::string dir = resolve_cache_dir(c);
    if (dir.empty()) {
        CheckpointBuildOptions opt;
        opt.threads = c.threads;
        t->cp = build_checkpoints(c.k, limit, stride, opt);
        t->built = true;
    } else {
        t->cp = load_or_build_checkpoints(dir, c.k, limit, stride, c.threads, &t->built);
    }
    t->sum = std::make_unique<Summatory>(t->cp);
    t->eval = std::make_unique<DeltaEvaluator>(*t->sum);
    return t;
}

// Provenance that does not depend on where the cache lives or whether the
// file was just built, so repeated runs stay byte-identical.
json checkpoint_json(const SummatoryCheckpoint& cp) {
    return json{{"file", checkpoint_filename(cp.k, cp.stride, cp.limit)},
                {"k", cp.k},
                {"stride", cp.stride},
                {"limit", cp.limit},
                {"entries", cp.entries.size()},
                {"checksum", cp.checksum}};
}

class Emitter {
public:
    Emitter(std::string command, json config, const Common& c, std::ostream& fallback)
        : command_(std::move(command)), config_(std::move(config)), common_(c), fallback_(&fallback) {
        config_["k"] = c.k;
        hash_ = hex64(fnv1a64(config_.dump()));
    }

    void set_checkpoint(const SummatoryCheckpoint& cp) { checkpoint_ = checkpoint_json(cp); }

    json meta() const {
        json m{{"tool", "piltz"}, {"version", PILTZ_VERSION}, {"command", command_},
               {"config", config_}, {"config_hash", hash_}};
        m["checkpoint"] = checkpoint_.is_null() ? json(nullptr) : checkpoint_;
        return m;
    }

    std::string csv_preamble() const {
        std::ostringstream o;
        o << "# piltz " << PILTZ_VERSION << ' ' << command_ << '\n';
        o << "# config " << config_.dump() << '\n';
        o << "# config_hash " << hash_ << '\n';
        if (!checkpoint_.is_null()) o << "# checkpoint " << checkpoint_.dump() << '\n';
        return o.str();
    }

    void write(const std::string& text) const {
        if (common_.out.empty()) {
            *fallback_ << text;
            fallback_->flush();
            return;
        }
        std::ofstream f(common_.out, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open output file " + common_.out);
        f << text;
        if (!f) throw IoError("write failed for " + common_.out);
    }

    void write_json(const json& body) const { write(body.dump(2) + "\n"); }

private:
    std::string command_;
    json config_;
    const Common& common_;
    std::ostream* fallback_;
    json checkpoint_;
    std::string hash_;
};

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

void add_common(CLI::App* sub, Common& c, bool with_k = true) {
    if (with_k) sub->add_option("--k", c.k, "divisor function order")->check(CLI::Range(1, 6));
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1U, 1024U));
    sub->add_option("--cache-dir", c.cache_dir, std::string("checkpoint cache (default $") + kCacheEnv + ")");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_flag("--reproducible", c.reproducible, "write 0 for wall-clock fields");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Piltz divisor problem laboratory", "piltz"};
    app.set_version_flag("--version", PILTZ_VERSION);
    // --h and --H are shift flags, so help has no short form.
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1, 1);

    Common c;
    std::function<void()> action;

    // sieve-cache
    auto* sc = app.add_subcommand("sieve-cache", "build or reuse exact summatory checkpoints");
    double sc_X = 1e6;
    std::string sc_stride;
    double sc_verify = 0.01;
    std::string sc_seed = "1";
    add_common(sc, c);
    sc->add_option("--X", sc_X, "coverage limit")->required();
    sc->add_option("--stride", sc_stride, "checkpoint spacing (default by size)");
    sc->add_option("--verify", sc_verify, "fraction of strides recomputed after load")->check(CLI::Range(0.0, 1.0));
    sc->add_option("--seed", sc_seed, "seed for the verification sample");
    sc->callback([&] {
        action = [&] {
            auto [stride, limit] = table_shape(sc_X);
            if (!sc_stride.empty()) {
                stride = parse_count(sc_stride, "--stride");
                if (stride == 0) throw DomainError("--stride must be positive");
                limit = (static_cast<std::uint64_t>(std::ceil(sc_X)) + stride - 1) / stride * stride;
            }
            const std::string dir = resolve_cache_dir(c);
            if (dir.empty()) throw DomainError("sieve-cache needs --cache-dir or $" + std::string(kCacheEnv));
            const auto t0 = Clock::now();
            bool built = false;
            const SummatoryCheckpoint cp = load_or_build_checkpoints(dir, c.k, limit, stride, c.threads, &built);
            const double build_time = seconds_since(t0);
            const auto t1 = Clock::now();
            const std::size_t checked = sc_verify > 0.0 ? verify_checkpoints(cp, sc_verify, parse_count(sc_seed, "--seed")) : 0;
            const double verify_time = seconds_since(t1);
            Emitter em("sieve-cache", json{{"X", sc_X}, {"stride", stride}, {"limit", limit}, {"verify", sc_verify}, {"seed", sc_seed}}, c, out);
            em.set_checkpoint(cp);
            json body{{"meta", em.meta()}};
            body["strides_verified"] = checked;
            const double dt = c.reproducible ? 0.0 : build_time;
            body["elapsed"] = dt;
            body["verify_elapsed"] = c.reproducible ? 0.0 : verify_time;
            body["values_per_second"] = (built && dt > 0.0) ? static_cast<double>(limit) / dt : 0.0;
            em.write_json(body);
        };
    });

    // delta
    auto* de = app.add_subcommand("delta", "Delta_k at points");
    std::vector<double> de_x;
    std::string de_side = "right";
    add_common(de, c);
    de->add_option("--x", de_x, "evaluation points")->required();
    de->add_option("--side", de_side, "right, left or midpoint at integers");
    de->callback([&] {
        action = [&] {
            const Side side = parse_side(de_side);
            double hi = 1.0;
            for (double x : de_x) hi = std::max(hi, x);
            auto t = open_table(c, hi);
            Emitter em("delta", json{{"x", de_x}, {"side", side_name(side)}}, c, out);
            em.set_checkpoint(t->cp);
            std::ostringstream o;
            o << em.csv_preamble() << "x,value,side\n";
            for (double x : de_x) o << fmt(x) << ',' << fmt(t->eval->at(x, side)) << ',' << side_name(side) << '\n';
            em.write(o.str());
        };
    });

    // constants
    auto* co = app.add_subcommand("constants", "C_k by both routes and the main-term coefficients");
    std::string co_primes = "1000000";
    std::string co_direct = "1000000";
    add_common(co, c);
    co->add_option("--prime-limit", co_primes, "Euler product prime limit");
    co->add_option("--direct-N", co_direct, "partial-sum length for the direct route (0 skips it)");
    co->callback([&] {
        action = [&] {
            const std::uint64_t P = parse_count(co_primes, "--prime-limit");
            const std::uint64_t N = parse_count(co_direct, "--direct-N");
            Emitter em("constants", json{{"prime_limit", P}, {"direct_N", N}}, c, out);
            json body{{"meta", em.meta()}, {"k", c.k}};
            const MainTermPoly poly = main_term_coeffs(c.k);
            json coeffs = json::array();
            for (const auto& v : poly.coeffs) coeffs.push_back(to_string(v, 30));
            json gammas = json::array();
            for (std::size_t i = 0; i < poly.gammas.size(); ++i) {
                gammas.push_back(json{{"n", i}, {"value", to_string(poly.gammas[i], 30)}, {"source", poly.gamma_tags[i]}});
            }
            body["main_term"] = json{{"order", poly.order}, {"coefficients", coeffs}, {"stieltjes", gammas}};
            auto ck_json = [](const CkValue& v) {
                return json{{"method", method_name(v.method)},
                            {"value", to_string(v.value, 30)},
                            {"bracket", {v.bracket_lo, v.bracket_hi}},
                            {"limit", v.limit},
                            {"provenance", v.provenance}};
            };
            const CkValue eu = ck_euler(c.k, P);
            body["euler"] = ck_json(eu);
            std::optional<CkValue> di;
            if (N > 0) {
                di = ck_direct(c.k, N);
                body["direct"] = ck_json(*di);
                body["routes_agree"] = di->contains(static_cast<double>(eu.value));
            }
            if (c.k == 2) {
                const dd closed = c2_closed_form();
                const double diff = std::abs(static_cast<double>(eu.value - closed));
                json cf{{"value", to_string(closed, 30)}, {"euler_difference", diff}, {"euler_ok", diff <= 1e-8}};
                if (di) cf["direct_contains"] = di->contains(static_cast<double>(closed));
                const bool pass = diff <= 1e-8 && (!di || di->contains(static_cast<double>(closed)));
                cf["status"] = pass ? "pass" : "fail";
                body["c2_closed_form"] = cf;
            }
            em.write_json(body);
        };
    });

    // qk-compare
    auto* qk = app.add_subcommand("qk-compare", "Delta_k against the truncated resonance sum");
    double qk_X = 1e6;
    std::optional<double> qk_Y;
    std::string qk_samples = "1000";
    std::string qk_seed = "1";
    add_common(qk, c);
    qk->add_option("--X", qk_X, "sample [X, 2X]")->required();
    qk->add_option("--Y", qk_Y, "resonance length, V = (Y / 2 pi)^k (default X^(2/3))");
    qk->add_option("--samples", qk_samples, "stratified samples");
    qk->add_option("--seed", qk_seed, "sampling seed");
    qk->callback([&] {
        action = [&] {
            const double Y = qk_Y.value_or(std::pow(qk_X, 2.0 / 3.0));
            const std::uint64_t n = parse_count(qk_samples, "--samples");
            const std::uint64_t seed = parse_count(qk_seed, "--seed");
            auto t = open_table(c, 2.0 * qk_X);
            const QkCompareReport r = qk_delta_compare(*t->eval, qk_X, Y, n, seed);
            Emitter em("qk-compare", json{{"X", qk_X}, {"Y", Y}, {"samples", n}, {"seed", seed}}, c, out);
            em.set_checkpoint(t->cp);
            std::ostringstream o;
            o << em.csv_preamble();
            o << "# summary " << json{{"V", r.V}, {"rms_delta", r.rms_delta}, {"rms_residual", r.rms_residual},
                                     {"correlation", r.correlation}}.dump() << '\n';
            o << "x,delta,qk,residual\n";
            for (const auto& row : r.rows) {
                o << fmt(row.x) << ',' << fmt(row.delta) << ',' << fmt(row.qk) << ',' << fmt(row.residual) << '\n';
            }
            em.write(o.str());
        };
    });

    // moment, diff-moment, sup-moment share sampling options.
    std::string mode = "exact";
    std::string samples = "10000";
    std::string seed = "1";
    double mX = 1e6;
    auto add_moment_opts = [&](CLI::App* sub) {
        add_common(sub, c);
        sub->add_option("--X", mX, "integrate over [X, 2X]")->required();
        sub->add_option("--mode", mode, "exact or sample")->check(CLI::IsMember({"exact", "sample"}));
        sub->add_option("--samples", samples, "strata in sample mode");
        sub->add_option("--seed", seed, "sampling seed");
    };
    auto moment_options = [&] {
        MomentOptions o;
        o.mode = parse_mode(mode);
        o.samples = parse_count(samples, "--samples");
        o.seed = parse_count(seed, "--seed");
        o.threads = c.threads;
        return o;
    };
    auto emit_moment = [&](const char* command, json config, const Table& t, const MomentReport& r) {
        config["X"] = mX;
        config["mode"] = mode;
        if (r.mode == MomentMode::Sample) {
            config["samples"] = samples;
            config["seed"] = seed;
        }
        Emitter em(command, std::move(config), c, out);
        em.set_checkpoint(t.cp);
        std::ostringstream o;
        o << em.csv_preamble();
        if (!r.note.empty()) o << "# note " << r.note << '\n';
        o << moment_csv_header() << '\n' << moment_csv_row(r, c.reproducible) << '\n';
        em.write(o.str());
    };

    auto* mo = app.add_subcommand("moment", "(1/X) int_X^2X Delta_k^m");
    int mo_m = 2;
    add_moment_opts(mo);
    mo->add_option("--m", mo_m, "power")->check(CLI::Range(1, 4));
    mo->callback([&] {
        action = [&] {
            auto t = open_table(c, 2.0 * mX);
            emit_moment("moment", json{{"m", mo_m}}, *t, power_moment(*t->eval, mX, mo_m, moment_options()));
        };
    });

    auto* dm = app.add_subcommand("diff-moment", "mean square of Delta_k(x + h) - Delta_k(x) or of the x/T shift");
    std::optional<double> dm_h;
    std::optional<double> dm_T;
    add_moment_opts(dm);
    auto* h_opt = dm->add_option("--h", dm_h, "additive shift");
    auto* T_opt = dm->add_option("--T", dm_T, "multiplicative shift x/T");
    h_opt->excludes(T_opt);
    dm->callback([&] {
        action = [&] {
            if (!dm_h && !dm_T) throw DomainError("diff-moment needs --h or --T");
            if (dm_h) {
                auto t = open_table(c, 2.0 * mX + *dm_h);
                emit_moment("diff-moment", json{{"h", *dm_h}}, *t, diff_mean_square(*t->eval, mX, *dm_h, moment_options()));
            } else {
                auto t = open_table(c, 2.0 * mX * (1.0 + 1.0 / *dm_T));
                emit_moment("diff-moment", json{{"T", *dm_T}}, *t,
                            mult_diff_mean_square(*t->eval, mX, *dm_T, moment_options()));
            }
        };
    });

    auto* sm = app.add_subcommand("sup-moment", "mean of sup_{0<=h<=H} (Delta_k(x + h) - Delta_k(x))^2");
    double sm_H = 10.0;
    add_moment_opts(sm);
    sm->add_option("--H", sm_H, "largest shift")->required();
    sm->callback([&] {
        action = [&] {
            auto t = open_table(c, 2.0 * mX + sm_H);
            emit_moment("sup-moment", json{{"H", sm_H}}, *t, sup_diff_mean_square(*t->eval, mX, sm_H, moment_options()));
        };
    });

    // sv-check
    auto* sv = app.add_subcommand("sv-check", "both sides of the Saffari-Vaughan averaging inequality");
    double sv_X = 1e4;
    double sv_h = 10.0;
    double sv_tol = 0.01;
    add_common(sv, c);
    sv->add_option("--X", sv_X, "upper end of the left-side range")->required();
    sv->add_option("--h", sv_h, "shift")->required();
    sv->add_option("--tol", sv_tol, "relative slack");
    sv->callback([&] {
        action = [&] {
            auto t = open_table(c, sv_X + 8.0 * sv_h + 2.0);
            const SaffariVaughanResult r = saffari_vaughan_check(*t->eval, sv_X, sv_h, sv_tol, c.threads);
            Emitter em("sv-check", json{{"X", sv_X}, {"h", sv_h}, {"tol", sv_tol}}, c, out);
            em.set_checkpoint(t->cp);
            json body{{"meta", em.meta()}};
            body["kind"] = kind_name(MomentKind::SaffariVaughan);
            body["lhs"] = r.lhs;
            body["rhs"] = r.rhs;
            body["lhs_error"] = r.lhs_error;
            body["rhs_error"] = r.rhs_error;
            body["slack"] = r.tol;
            body["ok"] = r.ok;
            body["elapsed"] = c.reproducible ? 0.0 : r.elapsed;
            em.write_json(body);
            if (!r.ok) throw VerificationError("Saffari-Vaughan inequality failed");
        };
    });

    // gapcount
    auto* gc = app.add_subcommand("gapcount", "count mu in (W, 2W] with (mu^(1/k) + alpha)^k near an integer");
    std::vector<std::string> gc_W{"10000", "100000"};
    std::vector<double> gc_rho{1e-3, 1e-2};
    std::vector<double> gc_alpha;
    std::string gc_draws = "16";
    std::string gc_seed = "1";
    add_common(gc, c);
    gc->add_option("--W", gc_W, "range bases");
    gc->add_option("--rho", gc_rho, "thresholds");
    gc->add_option("--alpha", gc_alpha, "fixed offsets (default: log-uniform draws)");
    gc->add_option("--alphas", gc_draws, "number of log-uniform draws");
    gc->add_option("--seed", gc_seed, "seed for the draws");
    gc->callback([&] {
        action = [&] {
            std::vector<std::uint64_t> Ws;
            for (const auto& w : gc_W) Ws.push_back(parse_count(w, "--W"));
            AlphaSampler sampler;
            sampler.count = parse_count(gc_draws, "--alphas");
            sampler.seed = parse_count(gc_seed, "--seed");
            json config{{"W", Ws}, {"rho", gc_rho}};
            GapSweep sweep;
            if (gc_alpha.empty()) {
                config["alphas"] = sampler.count;
                config["seed"] = sampler.seed;
                sweep = lemma_ratio_sweep(c.k, Ws, sampler, gc_rho);
            } else {
                config["alpha"] = gc_alpha;
                for (auto W : Ws) {
                    for (double a : gc_alpha) {
                        for (auto& r : count_near_integers_multi(c.k, W, a, gc_rho)) {
                            sweep.max_ratio = std::max(sweep.max_ratio, r.ratio);
                            sweep.uncertain += r.uncertain;
                            sweep.rows.push_back(r);
                        }
                    }
                }
            }
            Emitter em("gapcount", std::move(config), c, out);
            std::ostringstream o;
            o << em.csv_preamble();
            o << "# summary " << json{{"max_ratio", sweep.max_ratio}, {"uncertain", sweep.uncertain}}.dump() << '\n';
            o << gap_csv_header() << '\n';
            for (const auto& r : sweep.rows) o << gap_csv_row(r) << '\n';
            em.write(o.str());
        };
    });

    // detect
    auto* dt = app.add_subcommand("detect", "intervals of [X, 2X] on which Delta_k keeps its sign");
    double dt_X = 1e6;
    std::optional<double> dt_H;
    double dt_eta = 0.1;
    std::optional<double> dt_stride;
    std::string dt_primes = "1000000";
    add_common(dt, c);
    dt->add_option("--X", dt_X, "scan [X, 2X]")->required();
    dt->add_option("--H", dt_H, "interval length (default ceil(X^0.4))");
    dt->add_option("--eta-frac", dt_eta, "eta as a fraction of C_k")->check(CLI::Range(0.0, 0.5));
    dt->add_option("--stride", dt_stride, "scan stride (default H/4)");
    dt->add_option("--prime-limit", dt_primes, "Euler product prime limit for C_k");
    dt->callback([&] {
        action = [&] {
            const double H = dt_H.value_or(std::ceil(std::pow(dt_X, 0.4)));
            const double stride = dt_stride.value_or(H / 4.0);
            const CkValue ck = ck_euler(c.k, parse_count(dt_primes, "--prime-limit"));
            const double ckd = static_cast<double>(ck.value);
            auto t = open_table(c, 2.0 * dt_X);
            Emitter em("detect", json{{"X", dt_X}, {"H", H}, {"eta_frac", dt_eta}, {"stride", stride}, {"prime_limit", ck.limit}}, c, out);
            em.set_checkpoint(t->cp);
            const DetectionResult r = detect_intervals(*t->eval, dt_X, H, dt_eta * ckd, ckd, stride, c.threads);
            const CensusSummary s = interval_census(r);
            json body{{"meta", em.meta()}};
            body["ck"] = to_string(ck.value, 30);
            body["eta"] = r.eta;
            body["candidates"] = r.candidates;
            body["positive"] = r.positive;
            body["jump_rejected"] = r.jump_rejected;
            body["census"] = json{{"count", s.count},
                                  {"measure_scan", s.measure_scan},
                                  {"measure_union", s.measure_union},
                                  {"exponent", s.exponent},
                                  {"reference_exponent", s.reference_exponent}};
            json iv = json::array();
            for (const auto& rec : r.intervals) {
                iv.push_back(json{{"k", rec.k},
                                  {"start", rec.start},
                                  {"H", rec.H},
                                  {"threshold_at_start", rec.threshold_at_start},
                                  {"min_abs_delta", rec.min_abs_delta},
                                  {"sign", rec.sign > 0 ? "+" : "-"},
                                  {"sign_changes", rec.sign_changes},
                                  {"witness_x", rec.witness_x},
                                  {"w", rec.w_value}});
            }
            body["intervals"] = iv;
            body["elapsed"] = c.reproducible ? 0.0 : r.elapsed;
            em.write_json(body);
        };
    });

    // signchanges
    auto* sg = app.add_subcommand("signchanges", "exact count of sign changes of Delta_k");
    std::optional<double> sg_lo;
    std::optional<double> sg_hi;
    std::optional<double> sg_X;
    add_common(sg, c);
    sg->add_option("--lo", sg_lo, "lower end");
    sg->add_option("--hi", sg_hi, "upper end");
    sg->add_option("--X", sg_X, "shorthand for [X, 2X]");
    sg->callback([&] {
        action = [&] {
            double lo = 0.0;
            double hi = 0.0;
            if (sg_X) {
                lo = *sg_X;
                hi = 2.0 * *sg_X;
            } else if (sg_lo && sg_hi) {
                lo = *sg_lo;
                hi = *sg_hi;
            } else {
                throw DomainError("signchanges needs --X or both --lo and --hi");
            }
            auto t = open_table(c, hi);
            Emitter em("signchanges", json{{"lo", lo}, {"hi", hi}}, c, out);
            em.set_checkpoint(t->cp);
            json body{{"meta", em.meta()}, {"lo", lo}, {"hi", hi}};
            body["sign_changes"] = count_sign_changes(*t->eval, lo, hi);
            em.write_json(body);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        if (e.get_exit_code() != 0) err << app.help();
        return kExitUsage;
    }
    try {
        if (action) action();
        return kExitOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace piltz::cli

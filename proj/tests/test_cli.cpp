#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = piltz::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Body of a CSV artifact without its # preamble.
std::string csv_body(const std::string& s) {
    std::istringstream in(s);
    std::string line;
    std::string body;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') body += line + "\n";
    }
    return body;
}

fs::path cache() {
    static const fs::path p = [] {
        const fs::path d = fs::temp_directory_path() / "piltz_test_cli_cache";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return p;
}

}  // namespace

TEST_CASE("delta at a non-integer for k = 1") {
    const auto r = run({"delta", "--k", "1", "--x", "7.25"});
    REQUIRE(r.code == 0);
    CHECK(csv_body(r.out) == "x,value,side\n7.25,-0.25,right\n");
    CHECK(r.out.rfind("# piltz ", 0) == 0);
    CHECK(r.out.find("# config_hash ") != std::string::npos);
    CHECK(r.out.find("# checkpoint ") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"bogus"}).code == piltz::cli::kExitUsage);
    CHECK(run({}).code == piltz::cli::kExitUsage);
    CHECK(run({"delta", "--k", "9", "--x", "3"}).code == piltz::cli::kExitUsage);
    CHECK(run({"diff-moment", "--k", "2", "--X", "1000"}).code == piltz::cli::kExitUsage);
    CHECK(run({"moment", "--k", "2", "--X", "1000", "--samples", "12.5", "--mode", "sample"}).code ==
          piltz::cli::kExitUsage);
    const auto r = run({"nope"});
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("constants for k = 2 carry the closed-form check") {
    const auto r = run({"constants", "--k", "2", "--direct-N", "1e5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["c2_closed_form"]["status"] == "pass");
    CHECK(j["main_term"]["coefficients"][1] == "1");
    CHECK(j["meta"]["config"]["direct_N"] == 100000);
    CHECK(j["euler"]["value"].get<std::string>().size() >= 30);
}

TEST_CASE("scientific notation in numeric flags") {
    const auto a = run({"moment", "--k", "2", "--X", "1e3", "--mode", "sample", "--samples", "2e3", "--seed", "7"});
    const auto b = run({"moment", "--k", "2", "--X", "1000", "--mode", "sample", "--samples", "2000", "--seed", "7e0"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(csv_body(a.out).substr(0, 60) == csv_body(b.out).substr(0, 60));
}

TEST_CASE("byte-identical artifacts across thread counts and repeats") {
    const std::string dir = cache().string();
    const std::vector<std::vector<std::string>> cmds = {
        {"moment", "--k", "3", "--X", "2e4", "--reproducible", "--cache-dir", dir},
        {"moment", "--k", "3", "--X", "2e4", "--mode", "sample", "--samples", "3000", "--reproducible", "--cache-dir", dir},
        {"sup-moment", "--k", "2", "--X", "1e4", "--H", "50", "--reproducible", "--cache-dir", dir},
        {"detect", "--k", "3", "--X", "1e5", "--H", "5", "--eta-frac", "0.45", "--reproducible", "--cache-dir", dir},
        {"gapcount", "--k", "3", "--W", "2000", "--alphas", "3"},
    };
    for (auto cmd : cmds) {
        const auto one = run(cmd);
        cmd.push_back("--threads");
        cmd.push_back("4");
        const auto four = run(cmd);
        const auto again = run(cmd);
        REQUIRE(one.code == 0);
        CHECK(one.out == four.out);
        CHECK(four.out == again.out);
    }
}

TEST_CASE("cache directory from the environment and --out") {
    const fs::path dir = cache() / "env";
    setenv(piltz::cli::kCacheEnv, dir.c_str(), 1);
    const fs::path out = cache() / "sieve.json";
    const auto r = run({"sieve-cache", "--k", "3", "--X", "3e5", "--out", out.string(), "--reproducible"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["meta"]["checkpoint"]["file"] == "piltz_k3_s10000_l310000_v1.csv");
    CHECK(fs::exists(dir / "piltz_k3_s10000_l310000_v1.csv"));
    CHECK(j["strides_verified"].get<int>() >= 1);
    unsetenv(piltz::cli::kCacheEnv);
}

TEST_CASE("detect, sv-check and signchanges reports") {
    const auto d = run({"detect", "--k", "3", "--X", "1e5", "--H", "1", "--eta-frac", "0.49", "--stride", "0.25"});
    REQUIRE(d.code == 0);
    const auto j = nlohmann::json::parse(d.out);
    CHECK(j["census"]["count"].get<int>() >= 1);
    for (const auto& iv : j["intervals"]) CHECK(iv["sign_changes"] == 0);
    CHECK(j["census"]["reference_exponent"].get<double>() == doctest::Approx(37.0 / 96.0));

    const auto sv = run({"sv-check", "--k", "2", "--X", "1e3", "--h", "10"});
    REQUIRE(sv.code == 0);
    CHECK(nlohmann::json::parse(sv.out)["ok"] == true);

    const auto sc = run({"signchanges", "--k", "2", "--lo", "10", "--hi", "1000"});
    REQUIRE(sc.code == 0);
    CHECK(nlohmann::json::parse(sc.out)["sign_changes"].get<int>() > 0);
    CHECK(run({"signchanges", "--k", "2", "--lo", "10"}).code == piltz::cli::kExitUsage);
}

TEST_CASE("moment CSV columns") {
    const auto r = run({"diff-moment", "--k", "3", "--X", "1e4", "--T", "100", "--reproducible"});
    REQUIRE(r.code == 0);
    const std::string body = csv_body(r.out);
    CHECK(body.rfind("k,X,kind,param,value,error,mode,elapsed\n3,10000,diff-mult-T,100,", 0) == 0);
    CHECK(body.find(",exact-quadrature,0\n") != std::string::npos);
}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "primedensity/csv.hpp"
#include "primedensity/fitting.hpp"
#include "primedensity/primecount.hpp"

using namespace primedensity;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("count") {
    CHECK(first_line(run({"count", "1000000"}).out) == "78498");
    CHECK(first_line(run({"count", "1"}).out) == "0");
    CHECK(first_line(run({"count", "2"}).out) == "1");
    CHECK(first_line(run({"count", "1e10"}).out) == "455052511");
    CHECK(first_line(run({"count", "10^3", "--method", "fast"}).out) == "168");

    const auto r = run({"--no-timing", "count", "100"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "25\nsource: sieved\n");
    CHECK(run({"count", "1000000"}).out.find("time: ") != std::string::npos);

    const auto j = nlohmann::json::parse(run({"--format", "json", "--no-timing", "count", "1000"}).out);
    CHECK(j["count"] == 168);
    CHECK(!j.contains("seconds"));
}

TEST_CASE("count errors") {
    CHECK(run({"count", "abc"}).code == cli::kExitUsage);
    CHECK(run({"count", "-5"}).code == cli::kExitUsage);
    CHECK(run({"count"}).code == cli::kExitUsage);
    CHECK(run({"--max-x-cap", "1000", "count", "2000", "--method", "sieve"}).code == cli::kExitDomain);
    CHECK(run({"count", "1e14", "--method", "fast"}).code == cli::kExitDomain);
    const auto r = run({"count", "1e14", "--method", "fast"});
    CHECK(!r.err.empty());
    CHECK(r.out.empty());
}

TEST_CASE("approx") {
    auto rounded = [](const Run& r) { return r.out.substr(r.out.find(' ') + 1); };
    CHECK(rounded(run({"approx", "1000", "--method", "riemann-r"})) == "168\n");
    CHECK(rounded(run({"approx", "10", "--method", "legendre"})) == "20\n");
    CHECK(rounded(run({"approx", "1e10", "--method", "li"})) == "455055615\n");
    CHECK(rounded(run({"approx", "1000", "--method", "riemann-r-gram"})) == "168\n");
    CHECK(rounded(run({"approx", "1000", "--method", "conjecture"})) == "168\n");
    CHECK(rounded(run({"approx", "100", "--method", "riemann-r", "--n-max", "3"})) == "26\n");
    const auto e = run({"approx", "e", "--method", "gauss"});
    CHECK(e.code == cli::kExitOk);
    CHECK(std::stod(e.out) == doctest::Approx(2.718281828459045).epsilon(1e-15));
    CHECK(rounded(run({"approx", "100", "--method", "legendre", "--legendre-b", "0"})) == "22\n");
    CHECK(rounded(run({"approx", "1000", "--method", "conjecture", "--params", "0,0,-1,0"})) == "145\n");
}

TEST_CASE("approx errors") {
    CHECK(run({"approx", "1", "--method", "gauss"}).code == cli::kExitDomain);
    CHECK(run({"approx", "1.5", "--method", "riemann-r"}).code == cli::kExitDomain);
    CHECK(run({"approx", "10", "--method", "nope"}).code == cli::kExitUsage);
    CHECK(run({"approx", "10", "--method", "conjecture", "--params", "1,2"}).code == cli::kExitUsage);
    CHECK(run({"approx", "10", "--method", "legendre", "--legendre-b", "2.302585092994046"}).code == cli::kExitDomain);
}

TEST_CASE("scan") {
    CHECK(run({"scan", "2", "20"}).out == "2\n3\n5\n7\n11\n13\n17\n19\n");
    const auto empty = run({"scan", "24", "28"});
    CHECK(empty.code == cli::kExitOk);
    CHECK(empty.out.empty());

    std::ostringstream expected;
    for (auto p : sieve_primes(100'000).primes()) expected << p << '\n';
    CHECK(run({"scan", "2", "100000"}).out == expected.str());

    const auto fig = run({"scan", "2", "5", "--emit-figure-data"});
    CHECK(fig.out.rfind("x,pi,f,discontinuity\n2,1,", 0) == 0);
    CHECK(fig.out.find("\n4,2,") != std::string::npos);

    CHECK(run({"scan", "1", "10"}).code == cli::kExitDomain);
    CHECK(run({"scan", "10", "5"}).code == cli::kExitDomain);
    CHECK(run({"--format", "json", "scan", "2", "10"}).out == "[2,3,5,7]\n");
}

TEST_CASE("table") {
    const auto md = run({"--no-timing", "table", "3"});
    CHECK(md.code == cli::kExitOk);
    CHECK(md.out.find("Errata (1)") != std::string::npos);
    CHECK(md.out.find("computed in") == std::string::npos);
    const auto j = nlohmann::json::parse(run({"--format", "json", "table", "2"}).out);
    CHECK(j["errata"].size() == 5);
    CHECK(run({"--format", "csv", "table", "1", "--exact-max-exponent", "4"}).out.find("1,10,1,4,f,") !=
          std::string::npos);
    CHECK(run({"--format", "yaml", "table", "3"}).code == cli::kExitUsage);
    CHECK(run({"table", "7"}).code == cli::kExitUsage);
}

TEST_CASE("fit") {
    const auto r = run({"fit", "--corrected"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["converged"].get<bool>());
    CHECK(j["samples"] == 22);
    CHECK(j["dataset"] == "table1-corrected");
    CHECK(j["sse"].get<double>() <= 1.05 * j["paper_params_sse"].get<double>());

    const auto printed = nlohmann::json::parse(run({"fit", "--use-paper-sign"}).out);
    CHECK(printed["sse"].get<double>() > j["sse"].get<double>());

    CHECK(run({"fit", "--max-iterations", "0"}).code == cli::kExitUsage);
    CHECK(run({"fit", "--corrected", "--use-paper-sign"}).code == cli::kExitUsage);
    CHECK(run({"fit", "--data", "/nonexistent/data.csv"}).code == cli::kExitUsage);
    CHECK(run({"--format", "csv", "fit"}).code == cli::kExitUsage);
}

TEST_CASE("fit --data on synthetic samples") {
    const FitParams gen{0.5, -3.0, -0.8, 1.2};
    const auto path = std::filesystem::temp_directory_path() / "primedensity_cli_fit.csv";
    {
        std::ofstream f(path);
        f << "y,f\n";
        for (int k = 1; k <= 15; ++k) f << k << ',' << csv::format_real(f_hat(double(k), gen)) << '\n';
    }
    const auto r = run({"fit", "--data", path.string(), "--init", "0.6,-3.3,-0.9,1.1"});
    std::filesystem::remove(path);
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["dataset"] == "file");
    CHECK(j["params"]["a"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(j["params"]["b"].get<double>() == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(j["params"]["c"].get<double>() == doctest::Approx(-0.8).epsilon(1e-6));
    CHECK(j["params"]["d"].get<double>() == doctest::Approx(1.2).epsilon(1e-6));
}

TEST_CASE("dataset export") {
    const auto r = run({"dataset", "--max-exponent", "3", "--exact-max-exponent", "3"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.rfind("exponent,x,y,f,provenance\n1,10,1,-0.197414", 0) == 0);
    CHECK(r.out.find("computed") != std::string::npos);
    CHECK(run({"dataset", "--use-paper-sign"}).out.find("\n1,10,1,0.197414") != std::string::npos);
    CHECK(run({"dataset", "--max-exponent", "23"}).code == cli::kExitUsage);
}

TEST_CASE("output is deterministic without timings") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--no-timing", "count", "123456"}, {"--no-timing", "table", "2"}, {"fit"}, {"scan", "100", "1000"}}) {
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("usage") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

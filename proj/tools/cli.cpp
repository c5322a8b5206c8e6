#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "primedensity/approx.hpp"
#include "primedensity/csv.hpp"
#include "primedensity/errors.hpp"
#include "primedensity/fitting.hpp"
#include "primedensity/fmodel.hpp"
#include "primedensity/primecount.hpp"
#include "primedensity/report.hpp"

namespace primedensity::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct GlobalOptions {
    std::string format;
    bool no_timing = false;
    std::uint64_t max_x_cap = 0;
};

// "1000", "1e10", "10^10" or the literal "e".
double parse_real(const std::string& text) {
    if (text == "e") return std::numbers::e;
    if (auto caret = text.find('^'); caret != std::string::npos) {
        return std::pow(parse_real(text.substr(0, caret)), parse_real(text.substr(caret + 1)));
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw PreconditionError("not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_count_arg(const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        try {
            return std::stoull(text);
        } catch (const std::exception&) {
            throw PreconditionError("integer out of range: '" + text + "'");
        }
    }
    const double v = parse_real(text);
    if (v < 0 || v != std::floor(v) || v >= 1.8e19) throw PreconditionError("not a non-negative integer: '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

FitParams parse_params(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_real(item));
    if (v.size() != 4) throw PreconditionError("parameters must be four comma-separated numbers a,b,c,d");
    return {v[0], v[1], v[2], v[3]};
}

SieveConfig sieve_config(const GlobalOptions& g) {
    SieveConfig config = SieveConfig::from_environment();
    if (g.max_x_cap != 0) config.max_count_x = g.max_x_cap;
    return config;
}

std::string format_or(const GlobalOptions& g, const std::string& fallback) {
    const std::string f = g.format.empty() || g.format == "text" ? fallback : g.format;
    return f;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (format == a) return;
    throw PreconditionError("unsupported --format '" + format + "' for this command");
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// count ----------------------------------------------------------------------

struct CountArgs {
    std::string x;
    std::string method = "auto";
};

int cmd_count(const GlobalOptions& g, const CountArgs& a, std::ostream& out) {
    const std::uint64_t x = parse_count_arg(a.x);
    const auto config = sieve_config(g);
    const auto start = Clock::now();
    PiValue pi;
    if (a.method == "sieve") pi = prime_pi_sieve(x, config);
    else if (a.method == "fast") pi = prime_pi_fast(x);
    else pi = prime_pi(x, config);
    const double elapsed = seconds_since(start);

    const std::string format = format_or(g, "text");
    require_format(format, {"text", "json", "csv"});
    if (format == "json") {
        nlohmann::ordered_json j;
        j["x"] = pi.x;
        j["count"] = pi.count;
        j["source"] = to_string(pi.source);
        if (!g.no_timing) j["seconds"] = elapsed;
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "x,count,source" << (g.no_timing ? "" : ",seconds") << '\n';
        out << pi.x << ',' << pi.count << ',' << to_string(pi.source);
        if (!g.no_timing) out << ',' << csv::format_real(elapsed);
        out << '\n';
    } else {
        out << pi.count << '\n' << "source: " << to_string(pi.source) << '\n';
        if (!g.no_timing) out << "time: " << elapsed << " s\n";
    }
    return kExitOk;
}

// approx ---------------------------------------------------------------------

struct ApproxArgs {
    std::string x;
    std::string method;
    double legendre_b = kLegendreB;
    std::string params;
    int n_max = 0;
};

int cmd_approx(const GlobalOptions& g, const ApproxArgs& a, std::ostream& out) {
    const double x = parse_real(a.x);
    double value = 0.0;
    if (a.method == "riemann-r-gram") {
        value = riemann_r_gram(x);
    } else if (a.method == "riemann-r" && a.n_max > 0) {
        value = riemann_r_mobius(x, a.n_max);
    } else {
        const auto tag = parse_approx_tag(a.method);
        if (!tag) throw PreconditionError("unknown method '" + a.method + "'");
        ApproxMethod method;
        method.tag = *tag;
        method.legendre_b = a.legendre_b;
        if (!a.params.empty()) method.fit = parse_params(a.params);
        value = method(x);
    }
    const double rounded = round_half_away(value);

    const std::string format = format_or(g, "text");
    require_format(format, {"text", "json", "csv"});
    if (format == "json") {
        nlohmann::ordered_json j;
        j["x"] = x;
        j["method"] = a.method;
        j["value"] = value;
        j["rounded"] = static_cast<std::int64_t>(rounded);
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "x,method,value,rounded\n"
            << csv::format_real(x) << ',' << csv::escape(a.method) << ',' << csv::format_real(value) << ','
            << static_cast<std::int64_t>(rounded) << '\n';
    } else {
        out << csv::format_real(value) << ' ' << static_cast<std::int64_t>(rounded) << '\n';
    }
    return kExitOk;
}

// table ----------------------------------------------------------------------

struct TableArgs {
    int id = 0;
    int exact_max_exponent = 13;
};

int cmd_table(const GlobalOptions& g, const TableArgs& a, std::ostream& out) {
    const std::string format = format_or(g, "markdown");
    require_format(format, {"markdown", "json", "csv"});
    if (a.id < 1 || a.id > 3) throw PreconditionError("table id must be 1, 2 or 3");
    TableOptions options;
    options.sieve = sieve_config(g);
    options.table1_exact_max_exponent = a.exact_max_exponent;
    const auto start = Clock::now();
    const auto report = build_table_report(a.id, options);
    const double elapsed = seconds_since(start);
    if (format == "json") {
        out << to_json(report).dump(2) << '\n';
    } else if (format == "csv") {
        write_report_csv(out, report);
    } else {
        write_report_markdown(out, report);
        if (!g.no_timing) out << "\ncomputed in " << elapsed << " s\n";
    }
    return kExitOk;
}

// fit ------------------------------------------------------------------------

struct FitArgs {
    bool use_paper_sign = false;
    bool corrected = false;
    std::string data;
    std::string init = "1,-1,-1,1";
    int exact_max_exponent = 0;
    FitOptions options;
};

int cmd_fit(const GlobalOptions& g, const FitArgs& a, std::ostream& out) {
    const std::string format = format_or(g, "json");
    require_format(format, {"json"});
    if (a.use_paper_sign && a.corrected) throw PreconditionError("--use-paper-sign and --corrected are exclusive");
    a.options.validate();
    const auto init = parse_params(a.init);

    FDataset dataset;
    std::string source;
    if (!a.data.empty()) {
        std::ifstream in(a.data);
        if (!in) throw PreconditionError("cannot open dataset file '" + a.data + "'");
        dataset = read_dataset_csv(in);
        source = "file";
    } else {
        const auto sign = a.use_paper_sign ? TableISign::AsPrinted : TableISign::Corrected;
        dataset = build_dataset(22, exact_pi_source(a.exact_max_exponent), sign);
        source = a.use_paper_sign ? "table1-as-printed" : "table1-corrected";
    }

    const auto result = fit_lm(dataset, init, a.options);
    auto j = to_json(result);
    j["dataset"] = source;
    j["samples"] = dataset.size();
    j["paper_params_sse"] = residual_table(dataset, FitParams::paper()).sse;
    out << j.dump(2) << '\n';
    return kExitOk;
}

// scan -----------------------------------------------------------------------

struct ScanArgs {
    std::string lo;
    std::string hi;
    bool emit_figure_data = false;
};

int cmd_scan(const GlobalOptions& g, const ScanArgs& a, std::ostream& out) {
    const auto lo = parse_count_arg(a.lo);
    const auto hi = parse_count_arg(a.hi);
    const auto config = sieve_config(g);
    if (a.emit_figure_data) {
        out << "x,pi,f,discontinuity\n";
        for (const auto& p : figure_data(lo, hi, config))
            out << p.x << ',' << p.pi << ',' << csv::format_real(p.f) << ',' << (p.discontinuity ? 1 : 0) << '\n';
        return kExitOk;
    }
    const auto points = scan_discontinuities(lo, hi, config);
    const std::string format = format_or(g, "text");
    require_format(format, {"text", "json", "csv"});
    if (format == "json") {
        out << nlohmann::json(points).dump() << '\n';
    } else {
        if (format == "csv") out << "x\n";
        for (auto p : points) out << p << '\n';
    }
    return kExitOk;
}

// dataset --------------------------------------------------------------------

struct DatasetArgs {
    int max_exponent = 22;
    int exact_max_exponent = 0;
    bool use_paper_sign = false;
};

int cmd_dataset(const GlobalOptions& g, const DatasetArgs& a, std::ostream& out) {
    require_format(format_or(g, "csv"), {"csv"});
    if (a.max_exponent < 1 || a.max_exponent > 22) throw PreconditionError("--max-exponent must be in [1, 22]");
    const auto sign = a.use_paper_sign ? TableISign::AsPrinted : TableISign::Corrected;
    write_dataset_csv(out, build_dataset(a.max_exponent, exact_pi_source(a.exact_max_exponent), sign));
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prime counting, its classical approximations and the log-correction model f(x)"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format: text, csv, json or markdown")
        ->check(CLI::IsMember({"text", "csv", "json", "markdown"}));
    app.add_flag("--no-timing", g.no_timing, "Omit wall-clock timings from the output");
    app.add_option("--max-x-cap", g.max_x_cap, "Largest x the sieve paths accept");

    CountArgs count;
    auto* count_cmd = app.add_subcommand("count", "Exact pi(x)");
    count_cmd->add_option("x", count.x, "Upper bound (integer, 1e10 or 10^10)")->required();
    count_cmd->add_option("--method", count.method, "auto, sieve or fast")
        ->check(CLI::IsMember({"auto", "sieve", "fast"}));

    ApproxArgs approx;
    auto* approx_cmd = app.add_subcommand("approx", "Evaluate one estimator of pi(x)");
    approx_cmd->add_option("x", approx.x, "Argument (real, 'e' allowed)")->required();
    approx_cmd->add_option("--method", approx.method, "gauss, legendre, li, riemann-r, riemann-r-gram, conjecture")
        ->required();
    approx_cmd->add_option("--legendre-b", approx.legendre_b, "Constant B for the legendre method");
    approx_cmd->add_option("--params", approx.params, "Model coefficients a,b,c,d for the conjecture method");
    approx_cmd->add_option("--n-max", approx.n_max, "Truncate the Moebius series of riemann-r after n terms");

    TableArgs table;
    auto* table_cmd = app.add_subcommand("table", "Recompute a table and list its errata");
    table_cmd->add_option("id", table.id, "1, 2 or 3")->required();
    table_cmd->add_option("--exact-max-exponent", table.exact_max_exponent,
                          "Table 1: count pi(10^n) exactly up to this n (<= 13)");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Levenberg-Marquardt fit of the correction model");
    fit_cmd->add_flag("--use-paper-sign", fit.use_paper_sign, "Fit the x = 10 value with its printed sign");
    fit_cmd->add_flag("--corrected", fit.corrected, "Fit the sign-corrected table (default)");
    fit_cmd->add_option("--data", fit.data, "CSV file with y,f columns instead of the built-in table");
    fit_cmd->add_option("--init", fit.init, "Initial a,b,c,d");
    fit_cmd->add_option("--exact-max-exponent", fit.exact_max_exponent,
                        "Recompute f(10^n) from exact counts up to this n");
    fit_cmd->add_option("--max-iterations", fit.options.max_iterations);
    fit_cmd->add_option("--gradient-tolerance", fit.options.gradient_tolerance);
    fit_cmd->add_option("--initial-damping", fit.options.initial_damping);
    fit_cmd->add_option("--jacobian-step", fit.options.jacobian_step);

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Integers in [lo, hi] where f(x) jumps");
    scan_cmd->add_option("lo", scan.lo)->required();
    scan_cmd->add_option("hi", scan.hi)->required();
    scan_cmd->add_flag("--emit-figure-data", scan.emit_figure_data, "Print x,pi,f,discontinuity as CSV");

    DatasetArgs dataset;
    auto* dataset_cmd = app.add_subcommand("dataset", "Export the f(10^n) dataset as CSV");
    dataset_cmd->add_option("--max-exponent", dataset.max_exponent);
    dataset_cmd->add_option("--exact-max-exponent", dataset.exact_max_exponent);
    dataset_cmd->add_flag("--use-paper-sign", dataset.use_paper_sign);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*count_cmd) return cmd_count(g, count, out);
        if (*approx_cmd) return cmd_approx(g, approx, out);
        if (*table_cmd) return cmd_table(g, table, out);
        if (*fit_cmd) return cmd_fit(g, fit, out);
        if (*scan_cmd) return cmd_scan(g, scan, out);
        if (*dataset_cmd) return cmd_dataset(g, dataset, out);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace primedensity::cli

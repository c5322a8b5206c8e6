#include "primedensity/fmodel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "primedensity/csv.hpp"
#include "primedensity/errors.hpp"
#include "primedensity/paper_data.hpp"

namespace primedensity {

namespace {

double power_of_ten(int n) { return std::pow(10.0, n); }

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw PreconditionError(std::string("dataset csv: bad ") + what + " '" + text + "'");
    }
}

}  // namespace

std::string_view to_string(FProvenance provenance) {
    switch (provenance) {
        case FProvenance::ComputedFromPi: return "computed";
        case FProvenance::PaperTableI: return "paper";
        case FProvenance::External: return "external";
    }
    return "unknown";
}

FDataset::FDataset(std::vector<FSample> samples) : samples_(std::move(samples)) {
    std::sort(samples_.begin(), samples_.end(), [](const FSample& l, const FSample& r) { return l.y < r.y; });
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!(s.y > 0.0) || !std::isfinite(s.y) || !std::isfinite(s.f))
            throw PreconditionError("FDataset: every sample needs finite y > 0 and finite f");
        if (i > 0 && samples_[i - 1].y == s.y) throw PreconditionError("FDataset: duplicate y value");
    }
}

Eigen::VectorXd FDataset::ys() const {
    Eigen::VectorXd v(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) v(static_cast<Eigen::Index>(i)) = samples_[i].y;
    return v;
}

Eigen::VectorXd FDataset::fs() const {
    Eigen::VectorXd v(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) v(static_cast<Eigen::Index>(i)) = samples_[i].f;
    return v;
}

double f_exact(double x, std::uint64_t pi_x) {
    if (pi_x == 0) throw DomainError("f_exact: pi(x) must be >= 1");
    if (!(x >= 2.0)) throw DomainError("f_exact: x must be >= 2");
    return std::log(x) - x / static_cast<double>(pi_x);
}

PiByExponent exact_pi_source(int max_exponent) {
    return [max_exponent](int n) -> std::optional<PiValue> {
        if (n < 1 || n > max_exponent) return std::nullopt;
        std::uint64_t x = 1;
        for (int i = 0; i < n; ++i) x *= 10;
        if (x > kFastCountCap) return std::nullopt;
        return prime_pi_fast(x);
    };
}

FDataset build_dataset(int max_exponent, const PiByExponent& pi_source, TableISign sign) {
    std::vector<FSample> samples;
    const int top = std::min<int>(max_exponent, static_cast<int>(paper::kTableI.size()));
    for (int n = 1; n <= top; ++n) {
        FSample s;
        s.exponent = n;
        s.x = power_of_ten(n);
        s.y = n;
        const bool printed_sign = (n == 1 && sign == TableISign::AsPrinted);
        std::optional<PiValue> pi = (pi_source && !printed_sign) ? pi_source(n) : std::nullopt;
        if (pi && pi->count > 0) {
            s.f = f_exact(s.x, pi->count);
            s.provenance = FProvenance::ComputedFromPi;
        } else {
            s.f = paper::kTableI[n - 1].f;
            // The printed x = 10 entry has the wrong sign: ln 10 - 10/4 < 0.
            if (n == 1 && sign == TableISign::Corrected) s.f = -s.f;
            s.provenance = FProvenance::PaperTableI;
        }
        samples.push_back(s);
    }
    return FDataset(std::move(samples));
}

FDataset paper_dataset(TableISign sign) { return build_dataset(22, PiByExponent{}, sign); }

std::vector<std::uint64_t> scan_discontinuities(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
    std::vector<std::uint64_t> out;
    for (const auto& point : figure_data(lo, hi, config))
        if (point.discontinuity) out.push_back(point.x);
    return out;
}

std::vector<FigurePoint> figure_data(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
    if (lo < 2) throw DomainError("scan: lo must be >= 2");
    if (lo > hi) throw DomainError("scan: lo must be <= hi");
    if (hi > config.max_count_x) {
        throw CapacityError("scan: hi = " + std::to_string(hi) + " exceeds the sieve capacity " +
                            std::to_string(config.max_count_x));
    }
    const auto primes = primes_in_range(lo, hi, config);
    std::uint64_t pi_prev = prime_pi_sieve(lo - 1, config).count;
    std::vector<FigurePoint> out;
    out.reserve(hi - lo + 1);
    auto next_prime = primes.begin();
    for (std::uint64_t n = lo;; ++n) {
        std::uint64_t pi = pi_prev;
        if (next_prime != primes.end() && *next_prime == n) {
            ++pi;
            ++next_prime;
        }
        out.push_back({n, pi, f_exact(static_cast<double>(n), pi), pi > pi_prev});
        pi_prev = pi;
        if (n == hi) break;
    }
    return out;
}

ResidualTable residual_table(const FDataset& dataset, const FitParams& params) {
    if (dataset.empty()) throw PreconditionError("residual_table: empty dataset");
    ResidualTable table;
    for (const auto& s : dataset.samples()) {
        ResidualRow row{s.y, s.f, f_hat(s.y, params), 0.0};
        row.residual = row.f - row.f_hat;
        table.sse += row.residual * row.residual;
        table.rows.push_back(row);
    }
    return table;
}

void write_dataset_csv(std::ostream& out, const FDataset& dataset) {
    out << "exponent,x,y,f,provenance\n";
    for (const auto& s : dataset.samples()) {
        out << (s.exponent ? std::to_string(*s.exponent) : std::string()) << ',' << csv::format_real(s.x) << ','
            << csv::format_real(s.y) << ',' << csv::format_real(s.f) << ',' << to_string(s.provenance) << '\n';
    }
}

FDataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw PreconditionError("dataset csv: missing header");
    std::map<std::string, std::size_t> column;
    const auto header = csv::split_record(line);
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    if (!column.contains("y") || !column.contains("f"))
        throw PreconditionError("dataset csv: header must contain 'y' and 'f' columns");

    auto field = [&](const std::vector<std::string>& rec, const char* name) -> std::optional<std::string> {
        auto it = column.find(name);
        if (it == column.end() || it->second >= rec.size() || rec[it->second].empty()) return std::nullopt;
        return rec[it->second];
    };

    std::vector<FSample> samples;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto rec = csv::split_record(line);
        FSample s;
        s.y = parse_double(field(rec, "y").value_or(""), "y");
        s.f = parse_double(field(rec, "f").value_or(""), "f");
        s.x = field(rec, "x") ? parse_double(*field(rec, "x"), "x") : std::pow(10.0, s.y);
        if (auto e = field(rec, "exponent")) s.exponent = static_cast<int>(parse_double(*e, "exponent"));
        s.provenance = FProvenance::External;
        if (auto p = field(rec, "provenance")) {
            if (*p == "computed") s.provenance = FProvenance::ComputedFromPi;
            else if (*p == "paper") s.provenance = FProvenance::PaperTableI;
        }
        samples.push_back(s);
    }
    return FDataset(std::move(samples));
}

}  // namespace primedensity

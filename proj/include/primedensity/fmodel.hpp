#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "primedensity/approx.hpp"
#include "primedensity/primecount.hpp"

namespace primedensity {

enum class FProvenance { ComputedFromPi, PaperTableI, External };

std::string_view to_string(FProvenance provenance);

// One point (y = log10 x, f) of the correction function f(x) = ln x - x / pi(x).
struct FSample {
    std::optional<int> exponent;  // n when x = 10^n
    double x = 0.0;
    double y = 0.0;
    double f = 0.0;
    FProvenance provenance = FProvenance::ComputedFromPi;

    friend bool operator==(const FSample&, const FSample&) = default;
};

// Samples ordered by strictly increasing y. Construction sorts and validates.
class FDataset {
public:
    FDataset() = default;
    explicit FDataset(std::vector<FSample> samples);

    std::span<const FSample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    const FSample& operator[](std::size_t i) const { return samples_[i]; }

    Eigen::VectorXd ys() const;
    Eigen::VectorXd fs() const;

    friend bool operator==(const FDataset&, const FDataset&) = default;

private:
    std::vector<FSample> samples_;
};

// ln x - x / pi_x
double f_exact(double x, std::uint64_t pi_x);

// Which value to use for the x = 10 row of the printed table.
enum class TableISign { Corrected, AsPrinted };

using PiByExponent = std::function<std::optional<PiValue>(int exponent)>;

// Exact pi(10^n) for 1 <= n <= max_exponent (combinatorial counter), nothing beyond.
PiByExponent exact_pi_source(int max_exponent);

// f at x = 10^n for n = 1..max_exponent. Exponents the source can count exactly are computed
// from pi; the rest are taken from the embedded printed table.
FDataset build_dataset(int max_exponent, const PiByExponent& pi_source,
                       TableISign sign = TableISign::Corrected);

// The printed 22-row table with the x = 10 sign handled according to `sign`.
FDataset paper_dataset(TableISign sign = TableISign::Corrected);

// Integers n in [lo, hi] where pi(n) > pi(n - 1), i.e. where ln x - x / pi(x) jumps.
std::vector<std::uint64_t> scan_discontinuities(std::uint64_t lo, std::uint64_t hi,
                                                const SieveConfig& config = SieveConfig::from_environment());

struct FigurePoint {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    double f = 0.0;
    bool discontinuity = false;
};

// f sampled at every integer of [lo, hi] (lo >= 2), for plotting.
std::vector<FigurePoint> figure_data(std::uint64_t lo, std::uint64_t hi,
                                     const SieveConfig& config = SieveConfig::from_environment());

struct ResidualRow {
    double y = 0.0;
    double f = 0.0;
    double f_hat = 0.0;
    double residual = 0.0;  // f - f_hat
};

struct ResidualTable {
    std::vector<ResidualRow> rows;
    double sse = 0.0;
};

ResidualTable residual_table(const FDataset& dataset, const FitParams& params);

// CSV with header  exponent,x,y,f,provenance
void write_dataset_csv(std::ostream& out, const FDataset& dataset);
// Reads the format above; only the y and f columns are required.
FDataset read_dataset_csv(std::istream& in);

}  // namespace primedensity

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "primedensity/primecount.hpp"

namespace primedensity {

// Half-way cases go away from zero (21.5 -> 22, -21.5 -> -22).
double round_half_away(double value, int decimals = 0);

enum class CellStatus {
    Match,            // rounded value equals the printed one
    LastDigit,        // off by at most one unit in the last printed place
    Erratum,          // printed value contradicts the computation
    Unverified,       // nothing computed for this cell (beyond exact-count capacity)
};

std::string_view to_string(CellStatus status);
std::optional<CellStatus> parse_cell_status(std::string_view text);

struct ReportCell {
    std::string column;
    std::optional<double> computed;
    std::optional<double> rounded;
    std::optional<double> paper;
    CellStatus status = CellStatus::Unverified;

    bool match() const { return status == CellStatus::Match; }
    friend bool operator==(const ReportCell&, const ReportCell&) = default;
};

struct ReportRow {
    double x = 0.0;
    std::optional<int> exponent;
    std::optional<std::uint64_t> exact;
    std::vector<ReportCell> cells;

    const ReportCell* cell(std::string_view column) const;
    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Erratum {
    int table = 0;
    std::string cell;  // e.g. "x=500 exact"
    std::string paper_value;
    std::string computed_value;
    std::string note;

    friend bool operator==(const Erratum&, const Erratum&) = default;
};

struct ComparisonReport {
    int table = 0;
    int decimals = 0;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;
    std::vector<Erratum> errata;

    const ReportRow* row(double x) const;
    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

struct TableOptions {
    // Table I rows 10^n with n above this use the printed value only.
    int table1_exact_max_exponent = 13;
    SieveConfig sieve = SieveConfig::from_environment();
};

// Column ids in display order; "f" for table 1.
std::vector<std::string> table_columns(int table);

// Recomputes every cell of table 1, 2 or 3 and classifies it against the printed value.
ComparisonReport build_table_report(int table, const TableOptions& options = {});

// Status for one cell given the column tolerance rules of its table.
CellStatus classify_cell(int table, std::string_view column, std::optional<double> rounded,
                         std::optional<double> paper);

// Errata implied by the cell statuses, in row order.
std::vector<Erratum> derive_errata(const ComparisonReport& report);

void write_report_csv(std::ostream& out, const ComparisonReport& report);
ComparisonReport read_report_csv(std::istream& in);
nlohmann::ordered_json to_json(const ComparisonReport& report);
void write_report_markdown(std::ostream& out, const ComparisonReport& report);

}  // namespace primedensity

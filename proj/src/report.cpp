#include "primedensity/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "primedensity/approx.hpp"
#include "primedensity/csv.hpp"
#include "primedensity/errors.hpp"
#include "primedensity/fmodel.hpp"
#include "primedensity/paper_data.hpp"

namespace primedensity {

namespace {

constexpr double kTableIUnit = 1e-8;

int decimals_for(int table) { return table == 1 ? 8 : 0; }

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string x_label(const ReportRow& row) {
    if (row.exponent && *row.exponent > 1) return "10^" + std::to_string(*row.exponent);
    return format_fixed(row.x, 0);
}

std::string column_title(std::string_view column) {
    if (column == "exact") return "Exact";
    if (column == "this_work") return "This work";
    if (column == "riemann_r") return "R(x)";
    if (column == "li") return "Li(x)";
    if (column == "gauss") return "x/log x";
    if (column == "legendre") return "x/(log x - 1.80366)";
    if (column == "f") return "f(x)";
    return std::string(column);
}

ReportCell make_cell(int table, std::string column, double computed, std::optional<double> paper) {
    ReportCell cell;
    cell.column = std::move(column);
    cell.computed = computed;
    cell.rounded = round_half_away(computed, decimals_for(table));
    cell.paper = paper;
    cell.status = classify_cell(table, cell.column, cell.rounded, cell.paper);
    return cell;
}

std::uint64_t pow10u(int n) {
    std::uint64_t x = 1;
    for (int i = 0; i < n; ++i) x *= 10;
    return x;
}

template <typename Row>
ReportRow estimator_row(int table, const Row& printed, const SieveConfig& sieve) {
    ReportRow row;
    row.x = static_cast<double>(printed.x);
    if (table == 3) row.exponent = static_cast<int>(std::lround(std::log10(row.x)));
    const auto pi = prime_pi(printed.x, sieve);
    row.exact = pi.count;
    const double x = row.x;
    row.cells.push_back(make_cell(table, "exact", static_cast<double>(pi.count), static_cast<double>(printed.exact)));
    row.cells.push_back(make_cell(table, "this_work", conjecture_pi(x), static_cast<double>(printed.this_work)));
    row.cells.push_back(make_cell(table, "riemann_r", riemann_r_mobius(x), static_cast<double>(printed.riemann_r)));
    row.cells.push_back(make_cell(table, "li", li(x), static_cast<double>(printed.li)));
    row.cells.push_back(make_cell(table, "gauss", gauss_ratio(x), static_cast<double>(printed.gauss)));
    if constexpr (requires { printed.legendre; }) {
        row.cells.push_back(make_cell(table, "legendre", legendre(x, kLegendreB), static_cast<double>(printed.legendre)));
    }
    return row;
}

std::optional<double> parse_optional_double(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw PreconditionError("report csv: bad number '" + text + "'");
    return v;
}

}  // namespace

double round_half_away(double value, int decimals) {
    if (decimals == 0) return std::round(value);
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

std::string_view to_string(CellStatus status) {
    switch (status) {
        case CellStatus::Match: return "match";
        case CellStatus::LastDigit: return "last-digit";
        case CellStatus::Erratum: return "erratum";
        case CellStatus::Unverified: return "unverified";
    }
    return "unknown";
}

std::optional<CellStatus> parse_cell_status(std::string_view text) {
    for (auto s : {CellStatus::Match, CellStatus::LastDigit, CellStatus::Erratum, CellStatus::Unverified})
        if (to_string(s) == text) return s;
    return std::nullopt;
}

const ReportCell* ReportRow::cell(std::string_view column) const {
    for (const auto& c : cells)
        if (c.column == column) return &c;
    return nullptr;
}

const ReportRow* ComparisonReport::row(double x) const {
    for (const auto& r : rows)
        if (r.x == x) return &r;
    return nullptr;
}

std::vector<std::string> table_columns(int table) {
    switch (table) {
        case 1: return {"f"};
        case 2: return {"exact", "this_work", "riemann_r", "li", "gauss"};
        case 3: return {"exact", "this_work", "riemann_r", "li", "gauss", "legendre"};
    }
    throw PreconditionError("unknown table " + std::to_string(table) + " (expected 1, 2 or 3)");
}

CellStatus classify_cell(int table, std::string_view column, std::optional<double> rounded,
                         std::optional<double> paper) {
    if (!rounded || !paper) return CellStatus::Unverified;
    const double unit = table == 1 ? kTableIUnit : 1.0;
    const double diff = std::fabs(*rounded - *paper);
    if (diff <= unit * 1e-4) return CellStatus::Match;
    if (column == "exact") return CellStatus::Erratum;
    if (diff <= unit * (1.0 + 1e-6)) return CellStatus::LastDigit;
    return CellStatus::Erratum;
}

ComparisonReport build_table_report(int table, const TableOptions& options) {
    ComparisonReport report;
    report.table = table;
    report.decimals = decimals_for(table);
    report.columns = table_columns(table);

    if (table == 1) {
        for (const auto& printed : paper::kTableI) {
            ReportRow row;
            row.exponent = printed.exponent;
            row.x = std::pow(10.0, printed.exponent);
            if (printed.exponent <= options.table1_exact_max_exponent && printed.exponent <= 13) {
                const auto pi = prime_pi(pow10u(printed.exponent), options.sieve);
                row.exact = pi.count;
                row.cells.push_back(make_cell(1, "f", f_exact(row.x, pi.count), printed.f));
            } else {
                ReportCell cell;
                cell.column = "f";
                cell.paper = printed.f;
                cell.status = CellStatus::Unverified;
                row.cells.push_back(cell);
            }
            report.rows.push_back(std::move(row));
        }
    } else if (table == 2) {
        for (const auto& printed : paper::kTableII) report.rows.push_back(estimator_row(2, printed, options.sieve));
    } else if (table == 3) {
        for (const auto& printed : paper::kTableIII) report.rows.push_back(estimator_row(3, printed, options.sieve));
    }
    report.errata = derive_errata(report);
    return report;
}

std::vector<Erratum> derive_errata(const ComparisonReport& report) {
    std::vector<Erratum> out;
    for (const auto& row : report.rows) {
        for (const auto& cell : row.cells) {
            if (cell.status != CellStatus::Erratum) continue;
            Erratum e;
            e.table = report.table;
            e.cell = "x=" + x_label(row) + " " + cell.column;
            e.paper_value = format_fixed(*cell.paper, report.decimals);
            e.computed_value = format_fixed(*cell.rounded, report.decimals);
            if (report.table == 1) {
                e.note = std::fabs(*cell.paper + *cell.rounded) <= kTableIUnit * (1.0 + 1e-6)
                             ? "printed with the wrong sign: ln x - x/pi(x) is negative here"
                             : "printed value differs from ln x - x/pi(x) beyond the last digit";
            } else if (cell.column == "exact") {
                e.note = "printed count differs from the exact prime count";
            } else {
                e.note = "printed estimate differs from the formula by more than one count";
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
    out << "table,x,exponent,exact,column,computed,rounded,paper,status\n";
    auto opt = [](const std::optional<double>& v) { return v ? csv::format_real(*v) : std::string(); };
    for (const auto& row : report.rows) {
        for (const auto& cell : row.cells) {
            out << report.table << ',' << csv::format_real(row.x) << ','
                << (row.exponent ? std::to_string(*row.exponent) : std::string()) << ','
                << (row.exact ? std::to_string(*row.exact) : std::string()) << ',' << csv::escape(cell.column) << ','
                << opt(cell.computed) << ',' << opt(cell.rounded) << ',' << opt(cell.paper) << ','
                << to_string(cell.status) << '\n';
        }
    }
}

ComparisonReport read_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw PreconditionError("report csv: missing header");
    ComparisonReport report;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split_record(line);
        if (f.size() != 9) throw PreconditionError("report csv: expected 9 fields, got " + std::to_string(f.size()));
        const int table = std::stoi(f[0]);
        if (report.rows.empty()) {
            report.table = table;
            report.decimals = decimals_for(table);
        } else if (table != report.table) {
            throw PreconditionError("report csv: mixed table ids");
        }
        const double x = parse_optional_double(f[1]).value_or(0.0);
        if (report.rows.empty() || report.rows.back().x != x) {
            ReportRow row;
            row.x = x;
            if (!f[2].empty()) row.exponent = std::stoi(f[2]);
            if (!f[3].empty()) row.exact = std::stoull(f[3]);
            report.rows.push_back(std::move(row));
        }
        ReportCell cell;
        cell.column = f[4];
        cell.computed = parse_optional_double(f[5]);
        cell.rounded = parse_optional_double(f[6]);
        cell.paper = parse_optional_double(f[7]);
        const auto status = parse_cell_status(f[8]);
        if (!status) throw PreconditionError("report csv: unknown status '" + f[8] + "'");
        cell.status = *status;
        if (report.rows.size() == 1) report.columns.push_back(cell.column);
        report.rows.back().cells.push_back(std::move(cell));
    }
    report.errata = derive_errata(report);
    return report;
}

nlohmann::ordered_json to_json(const ComparisonReport& report) {
    using json = nlohmann::ordered_json;
    json j;
    j["table"] = report.table;
    j["columns"] = report.columns;
    json rows = json::array();
    auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
    for (const auto& row : report.rows) {
        json r;
        r["x"] = row.x;
        r["exponent"] = row.exponent ? json(*row.exponent) : json(nullptr);
        r["exact"] = row.exact ? json(*row.exact) : json(nullptr);
        json cells = json::array();
        for (const auto& cell : row.cells) {
            json c;
            c["column"] = cell.column;
            c["computed"] = opt(cell.computed);
            c["rounded"] = opt(cell.rounded);
            c["paper"] = opt(cell.paper);
            c["status"] = to_string(cell.status);
            c["match"] = cell.match();
            cells.push_back(std::move(c));
        }
        r["cells"] = std::move(cells);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    json errata = json::array();
    for (const auto& e : report.errata) {
        errata.push_back(json{{"table", e.table},
                              {"cell", e.cell},
                              {"paper_value", e.paper_value},
                              {"computed_value", e.computed_value},
                              {"note", e.note}});
    }
    j["errata"] = std::move(errata);
    return j;
}

void write_report_markdown(std::ostream& out, const ComparisonReport& report) {
    const int d = report.decimals;
    if (report.table == 1) {
        out << "| x | f(x) computed | f(x) printed | status |\n|---|---|---|---|\n";
        for (const auto& row : report.rows) {
            const auto& cell = row.cells.front();
            out << "| " << x_label(row) << " | " << (cell.rounded ? format_fixed(*cell.rounded, d) : "-") << " | "
                << (cell.paper ? format_fixed(*cell.paper, d) : "-") << " | " << to_string(cell.status) << " |\n";
        }
    } else {
        out << "| x |";
        for (const auto& c : report.columns) out << ' ' << column_title(c) << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < report.columns.size(); ++i) out << "---|";
        out << '\n';
        for (const auto& row : report.rows) {
            out << "| " << x_label(row) << " |";
            for (const auto& cell : row.cells) {
                out << ' ' << format_fixed(*cell.rounded, d);
                if (cell.status == CellStatus::LastDigit) out << " (" << format_fixed(*cell.paper, d) << ")";
                if (cell.status == CellStatus::Erratum) out << " **(" << format_fixed(*cell.paper, d) << ")**";
                out << " |";
            }
            out << '\n';
        }
        out << "\nPrinted values in parentheses where they differ; bold marks errata.\n";
    }
    out << "\nErrata (" << report.errata.size() << "):\n";
    for (const auto& e : report.errata)
        out << "- " << e.cell << ": printed " << e.paper_value << ", computed " << e.computed_value << " (" << e.note
            << ")\n";
}

}  // namespace primedensity

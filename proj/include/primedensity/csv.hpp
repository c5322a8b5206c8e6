#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace primedensity::csv {

// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string escape(std::string_view field);

// Splits one record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line);

// Shortest decimal text that parses back to the same double ("%.17g").
std::string format_real(double value);

}  // namespace primedensity::csv

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "advcert/errors.hpp"

namespace advcert {

/// Locale-independent, shortest round-trip decimal form (reparsing gives the
/// identical double), so CSV outputs are diffable and reload exactly.
std::string format_double(double v);

double parse_double(std::string_view s);

std::vector<std::string> split_csv_line(const std::string& line);

/// Lines of a CSV file with '#' comment lines skipped; first remaining line
/// is the header.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::string* header = nullptr);

}  // namespace advcert

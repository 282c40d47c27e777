#pragma once

#include <optional>
#include <string>
#include <vector>

namespace survar {

// Numeric output format used everywhere: 6 significant digits, NA literal.
std::string fmt6(double v);
std::string fmt6(const std::optional<double>& v);

std::vector<std::string> split_csv_line(const std::string& line);
std::string trim(const std::string& s);

double parse_double(const std::string& s, const std::string& what);
long parse_long(const std::string& s, const std::string& what);

} // namespace survar

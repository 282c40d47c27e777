#include "survar/population.hpp"

#include <fstream>
#include <limits>
#include <unordered_map>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"
#include "survar/text.hpp"

namespace survar {

double Stratum::mean() const {
  return kernels::sum(values) / static_cast<double>(values.size());
}

double Stratum::variance() const {
  const std::size_t n = values.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return kernels::sumsq_dev(values, mean()) / static_cast<double>(n - 1);
}

StratifiedPopulation::StratifiedPopulation(std::vector<Stratum> strata)
    : strata_(std::move(strata)) {
  validate();
  for (const auto& s : strata_) total_ += s.size();
}

void StratifiedPopulation::validate() const {
  std::unordered_map<std::string, int> seen;
  for (const auto& s : strata_) {
    if (s.values.empty())
      throw invalid_design_error("stratum '" + s.label + "' has no units");
    if (++seen[s.label] > 1)
      throw invalid_design_error("duplicate stratum id '" + s.label + "'");
  }
  if (strata_.empty()) throw invalid_design_error("population has no strata");
}

double StratifiedPopulation::mean() const {
  double t = 0.0;
  for (const auto& s : strata_) t += kernels::sum(s.values);
  return t / static_cast<double>(total_);
}

StratifiedPopulation StratifiedPopulation::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open population file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (trim(line) != "stratum,x,y")
    throw io_error(path + ": expected header 'stratum,x,y', got '" + trim(line) + "'");

  std::vector<Stratum> strata;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (fields.size() != 3) throw io_error(where + ": expected 3 fields");
    const std::string label = trim(fields[0]);
    const double x = parse_double(fields[1], where + " column x");
    const double y = parse_double(fields[2], where + " column y");
    auto [it, fresh] = index.try_emplace(label, strata.size());
    if (fresh) {
      strata.push_back(Stratum{label, x, {}});
    } else if (strata[it->second].sort_key != x) {
      throw io_error(where + ": stratum '" + label + "' has inconsistent x (" +
                     fmt6(strata[it->second].sort_key) + " vs " + fmt6(x) + ")");
    }
    strata[it->second].values.push_back(y);
  }
  if (strata.empty()) throw io_error(path + ": no data rows");
  return StratifiedPopulation(std::move(strata));
}

void StratifiedPopulation::to_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << "stratum,x,y\n";
  for (const auto& s : strata_)
    for (double y : s.values)
      out << s.label << ',' << fmt6(s.sort_key) << ',' << fmt6(y) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

} // namespace survar

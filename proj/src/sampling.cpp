#include "survar/sampling.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "survar/errors.hpp"
#include "survar/text.hpp"

namespace survar {

const char* design_name(Design d) {
  return d == Design::Srswor ? "srswor" : "systematic";
}

Design design_from_string(const std::string& s) {
  if (s == "srswor" || s == "SRSWOR") return Design::Srswor;
  if (s == "systematic" || s == "SYSTEMATIC") return Design::Systematic;
  throw config_error("unknown design '" + s + "' (srswor|systematic)");
}

std::size_t StratifiedSample::total_population() const {
  std::size_t n = 0;
  for (const auto& s : strata) n += s.population_size;
  return n;
}

std::size_t StratifiedSample::total_sample() const {
  std::size_t n = 0;
  for (const auto& s : strata) n += s.size();
  return n;
}

namespace {

void check_counts(const StratifiedPopulation& pop, std::span<const int> n_h) {
  if (n_h.size() != pop.stratum_count())
    throw invalid_design_error("n_h has " + std::to_string(n_h.size()) +
                               " entries for " + std::to_string(pop.stratum_count()) +
                               " strata");
  for (std::size_t h = 0; h < n_h.size(); ++h) {
    const auto& st = pop.stratum(h);
    if (n_h[h] < 1)
      throw invalid_design_error("stratum '" + st.label + "': n_h must be >= 1");
    if (static_cast<std::size_t>(n_h[h]) > st.size())
      throw invalid_design_error("stratum '" + st.label + "': n_h = " +
                                 std::to_string(n_h[h]) + " exceeds N_h = " +
                                 std::to_string(st.size()));
  }
}

SampledStratum make_sampled(const Stratum& st, std::vector<std::size_t> idx,
                            std::size_t n) {
  SampledStratum out;
  out.label = st.label;
  out.sort_key = st.sort_key;
  out.population_size = st.size();
  std::sort(idx.begin(), idx.end());
  out.values.reserve(n);
  for (auto i : idx) out.values.push_back(st.values[i]);
  out.indices = std::move(idx);
  const double N = static_cast<double>(st.size());
  const double nn = static_cast<double>(n);
  out.pi1 = nn / N;
  out.pi_joint = n >= 2 ? nn * (nn - 1.0) / (N * (N - 1.0)) : 0.0;
  return out;
}

} // namespace

StratifiedSample draw_srswor(const StratifiedPopulation& pop,
                             std::span<const int> n_h, RngStream& rng) {
  check_counts(pop, n_h);
  StratifiedSample sample;
  sample.design = Design::Srswor;
  sample.strata.reserve(pop.stratum_count());
  std::vector<std::size_t> scratch;
  for (std::size_t h = 0; h < pop.stratum_count(); ++h) {
    const auto& st = pop.stratum(h);
    const std::size_t n = static_cast<std::size_t>(n_h[h]);
    scratch.resize(st.size());
    std::iota(scratch.begin(), scratch.end(), std::size_t{0});
    // partial Fisher-Yates: first n entries are a uniform subset
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + rng.uniform_below(scratch.size() - i);
      std::swap(scratch[i], scratch[j]);
    }
    sample.strata.push_back(
        make_sampled(st, {scratch.begin(), scratch.begin() + n}, n));
  }
  return sample;
}

StratifiedSample draw_systematic(const StratifiedPopulation& pop,
                                 std::span<const int> n_h, RngStream& rng) {
  check_counts(pop, n_h);
  StratifiedSample sample;
  sample.design = Design::Systematic;
  sample.strata.reserve(pop.stratum_count());
  for (std::size_t h = 0; h < pop.stratum_count(); ++h) {
    const auto& st = pop.stratum(h);
    const std::size_t n = static_cast<std::size_t>(n_h[h]);
    const std::size_t k = st.size() / n;
    const std::size_t start = rng.uniform_below(k); // 0-based r-1
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = start + j * k;
    auto drawn = make_sampled(st, std::move(idx), n);
    drawn.pi_joint = std::numeric_limits<double>::quiet_NaN();
    sample.strata.push_back(std::move(drawn));
  }
  return sample;
}

std::vector<int> uniform_psus(const StratifiedPopulation& pop, int psus) {
  return std::vector<int>(pop.stratum_count(), psus);
}

StratifiedSample StratifiedSample::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open sample file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (trim(line) != "stratum,x,y,Nh,design")
    throw io_error(path + ": expected header 'stratum,x,y,Nh,design'");

  StratifiedSample sample;
  std::map<std::string, std::size_t> index;
  std::string design_seen;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (f.size() != 5) throw io_error(where + ": expected 5 fields");
    const std::string label = trim(f[0]);
    const double x = parse_double(f[1], where + " column x");
    const double y = parse_double(f[2], where + " column y");
    const long nh = parse_long(f[3], where + " column Nh");
    const std::string dz = trim(f[4]);
    if (design_seen.empty()) design_seen = dz;
    else if (design_seen != dz) throw io_error(where + ": mixed design values");
    if (nh < 1) throw io_error(where + ": Nh must be >= 1");
    auto [it, fresh] = index.try_emplace(label, sample.strata.size());
    if (fresh) {
      SampledStratum st;
      st.label = label;
      st.sort_key = x;
      st.population_size = static_cast<std::size_t>(nh);
      sample.strata.push_back(std::move(st));
    } else {
      auto& st = sample.strata[it->second];
      if (st.sort_key != x || st.population_size != static_cast<std::size_t>(nh))
        throw io_error(where + ": stratum '" + label + "' has inconsistent x or Nh");
    }
    sample.strata[it->second].values.push_back(y);
  }
  if (sample.strata.empty()) throw io_error(path + ": no data rows");
  sample.design = design_from_string(design_seen);
  for (auto& st : sample.strata) {
    const std::size_t n = st.values.size();
    if (n > st.population_size)
      throw io_error(path + ": stratum '" + st.label + "' has more rows than Nh");
    st.indices.resize(n); // positions unknown from a flat file
    const double N = static_cast<double>(st.population_size);
    st.pi1 = static_cast<double>(n) / N;
    st.pi_joint = sample.design == Design::Srswor
                      ? (n >= 2 ? n * (n - 1.0) / (N * (N - 1.0)) : 0.0)
                      : std::numeric_limits<double>::quiet_NaN();
  }
  return sample;
}

void StratifiedSample::to_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << "stratum,x,y,Nh,design\n";
  for (const auto& st : strata)
    for (double y : st.values)
      out << st.label << ',' << fmt6(st.sort_key) << ',' << fmt6(y) << ','
          << st.population_size << ',' << design_name(design) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

} // namespace survar

#pragma once

#include <span>
#include <string>
#include <vector>

namespace survar {

// One stratum of a finite population. Values keep insertion order; systematic
// selection depends on it.
struct Stratum {
  std::string label;          // id as given in the source file
  double sort_key = 0.0;      // collapsing index x_h
  std::vector<double> values; // y_hj, size N_h

  std::size_t size() const { return values.size(); }
  double mean() const;
  double variance() const; // (N_h - 1) denominator; NaN when N_h < 2
};

class StratifiedPopulation {
public:
  StratifiedPopulation() = default;
  explicit StratifiedPopulation(std::vector<Stratum> strata);

  std::size_t stratum_count() const { return strata_.size(); }
  std::size_t total_units() const { return total_; }
  const Stratum& stratum(std::size_t h) const { return strata_[h]; }
  const std::vector<Stratum>& strata() const { return strata_; }

  // Population mean of the study variable.
  double mean() const;

  // CSV schema: header `stratum,x,y`, one row per unit. Stratum ids are
  // arbitrary strings mapped to dense indices in first-appearance order;
  // x must be constant within a stratum.
  static StratifiedPopulation from_csv(const std::string& path);
  void to_csv(const std::string& path) const;

private:
  void validate() const;

  std::vector<Stratum> strata_;
  std::size_t total_ = 0;
};

} // namespace survar

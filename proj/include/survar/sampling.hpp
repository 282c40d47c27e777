#pragma once

#include <span>
#include <string>
#include <vector>

#include "survar/population.hpp"
#include "survar/rng.hpp"

namespace survar {

enum class Design { Srswor, Systematic };

const char* design_name(Design d);
Design design_from_string(const std::string& s);

// Drawn units of one stratum plus the design quantities the estimators need.
// pi_joint is the within-stratum second-order inclusion probability under
// SRSWOR (zero when n_h = 1); it is not defined under systematic selection.
struct SampledStratum {
  std::string label;
  double sort_key = 0.0;
  std::size_t population_size = 0;          // N_h
  std::vector<std::size_t> indices;         // ascending positions in the stratum
  std::vector<double> values;               // y at those positions
  double pi1 = 0.0;                         // n_h / N_h
  double pi_joint = 0.0;

  std::size_t size() const { return values.size(); }
  double sampling_fraction() const {
    return pi1;
  }
};

struct StratifiedSample {
  Design design = Design::Srswor;
  std::vector<SampledStratum> strata;

  std::size_t stratum_count() const { return strata.size(); }
  std::size_t total_population() const;
  std::size_t total_sample() const;

  // Sample CSV schema: header `stratum,x,y,Nh,design`.
  static StratifiedSample from_csv(const std::string& path);
  void to_csv(const std::string& path) const;
};

// Stratified simple random sampling without replacement; every size-n_h
// subset of stratum h equiprobable.
StratifiedSample draw_srswor(const StratifiedPopulation& pop,
                             std::span<const int> n_h, RngStream& rng);

// Linear systematic selection in stored order: skip k = floor(N_h/n_h),
// random start in {1..k}. When k*n_h < N_h the trailing units can never be
// selected; that defect is inherent to the integer-skip scheme.
StratifiedSample draw_systematic(const StratifiedPopulation& pop,
                                 std::span<const int> n_h, RngStream& rng);

// Uniform n per stratum helper.
std::vector<int> uniform_psus(const StratifiedPopulation& pop, int psus);

} // namespace survar

#pragma once

#include <span>
#include <string>
#include <vector>

#include "survar/population.hpp"
#include "survar/sampling.hpp"

namespace survar {

// Which strata merge into which pseudo-stratum. Groups pair strata adjacent
// in sort-key order; an odd count leaves one final triple.
struct CollapsePlan {
  std::vector<std::size_t> order;               // stratum indices sorted by x_h
  std::vector<std::vector<std::size_t>> groups; // indices into the population
};

CollapsePlan make_collapse_plan(const StratifiedPopulation& pop);

// Plan from per-stratum sort keys (used when only a sample is available).
CollapsePlan make_collapse_plan(std::span<const double> sort_keys);

// Pooled summary of one pseudo-stratum.
struct PseudoStratum {
  std::size_t index = 0;             // g
  std::vector<std::size_t> members;  // original stratum indices, L_g of them
  double sample_size = 0.0;          // n_hl
  double population_size = 0.0;      // N_hl
  double ybar = 0.0;
  double s2 = 0.0;                   // (n_hl - 1) denominator

  int member_count() const { return static_cast<int>(members.size()); }
  double sampling_fraction() const { return sample_size / population_size; }
};

std::vector<PseudoStratum> collapse_sample(const CollapsePlan& plan,
                                           const StratifiedSample& sample);

// (1/N^2) sum_g (N_hl^2 / n_hl) (1 - f_hl) s2_hl
double collapsed_variance(std::span<const PseudoStratum> pseudo, double n_total);

// The mean-gap bias expression, (1/N^2) sum_g (N^2/n)(1-f) (ybar_h - ybar_l)^2
// over population stratum means (summed over member pairs for triples). It is
// the quantity driving the pairing guidance and the O(1/H) decay argument,
// and overstates the exact design bias.
double collapsed_bias_formula(const StratifiedPopulation& pop,
                              const CollapsePlan& plan,
                              std::span<const int> n_h);

// Exact design bias of collapsed_variance under stratified SRSWOR:
// E[var_Coll] - V(ybar_st), from the closed form of E[s2_pooled]. Verified by
// full enumeration in the test suite for pairs, triples and mixed n_h.
double collapsed_bias_exact(const StratifiedPopulation& pop,
                            const CollapsePlan& plan,
                            std::span<const int> n_h);

// `group,stratum_id` rows, for auditing the pairing before any sampling.
void plan_to_csv(const CollapsePlan& plan, const StratifiedPopulation& pop,
                 const std::string& path);

} // namespace survar

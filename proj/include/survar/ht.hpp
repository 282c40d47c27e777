#pragma once

#include <span>
#include <vector>

#include "survar/population.hpp"
#include "survar/sampling.hpp"

namespace survar {

// Inverse-inclusion-probability estimator of the population mean,
// (1/N) sum_h sum_j y_hj / pi_j.
double ht_mean(const StratifiedSample& sample);

// Unbiased variance estimator of ht_mean under SRSWOR via the Delta form,
// (1/N^2) sum_h sumsum Delta_jk (y_j/pi_j)(y_k/pi_k). Requires n_h >= 2 in
// every stratum; under systematic selection most pi_jk vanish so the
// quantity is not estimable.
double ht_variance(const StratifiedSample& sample);

// Algebraically equal route, (1/N^2) sum_h N_h^2 (1-f_h) s_h^2 / n_h.
double ht_variance_textbook(const StratifiedSample& sample);

// True design variance sum_h W_h^2 (1-f_h) S_h^2 / n_h computed from the full
// population. Single-unit strata have undefined S_h^2; their contribution is
// zero and the stratum index is appended to *degenerate when given.
double true_design_variance(const StratifiedPopulation& pop,
                            std::span<const int> n_h,
                            std::vector<std::size_t>* degenerate = nullptr);

} // namespace survar

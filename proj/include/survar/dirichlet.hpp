#pragma once

#include <optional>
#include <span>
#include <string>

#include "survar/collapse.hpp"

namespace survar {

// Empirical-Bayes plug-in quantities for the Dirichlet-process estimator.
// M_hat is +infinity when the clamp in the M estimate fires (M_inv = 0); the
// location estimate mu0 is undefined in that case and the estimator reports
// NA downstream.
struct DpHyperEstimates {
  double msb = 0.0;
  double msw = 0.0;
  double g = 0.0;
  double m_inv = 0.0;
  double m_hat = 0.0; // 1/m_inv, +inf when clamped
  double mu0 = 0.0;   // valid only when mu0_defined
  double sigma0_sq = 0.0;
  bool mu0_defined = false;
};

// One-way ANOVA mean squares over the pseudo-strata pooled samples, the
// n-imbalance constant g = sum n - sum n^2 / sum n, and the base-measure
// size estimate
//   M_inv = max{0, ((G-1) MSB / ((G-3) MSW) - 1) (G-1) g}.
// Requires at least 4 pseudo-strata and MSW > 0.
DpHyperEstimates estimate_dp_hyper(std::span<const PseudoStratum> pseudo);

// Spec-shaped helpers over the combined estimate.
double estimate_M(std::span<const PseudoStratum> pseudo);
std::pair<double, double> estimate_mu0_sigma0(std::span<const PseudoStratum> pseudo,
                                              double m_hat);

// FPC adjustment terms of one pseudo-stratum.
struct FpcAdjustments {
  double lambda, alpha, beta, gamma;
};
FpcAdjustments fpc_adjustments(const PseudoStratum& ps, double m_hat);

// Posterior-mean estimate of S2_hl under the Dirichlet-process model with
// plug-in hyperparameters.
double nb_rho(const PseudoStratum& ps, const DpHyperEstimates& hyper);

struct NbVarianceResult {
  std::optional<double> value;
  std::string na_reason;
  DpHyperEstimates hyper;
};

// (1/N^2) sum_g (N^2/n)(1-f) rho_g; NA when M_inv = 0.
NbVarianceResult nb_variance(std::span<const PseudoStratum> pseudo, double n_total);

} // namespace survar

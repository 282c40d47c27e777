#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "survar/collapse.hpp"
#include "survar/rng.hpp"

namespace survar {

// Hierarchical model on the pseudo-stratum variances:
//   stage 1: log s2_g | S2_g, sigma2 ~ Normal(log S2_g, sigma2)
//   stage 2: S2_g ~ Half-t(L_g + 1, d)
//   stage 3: 1/sigma2 ~ Gamma(L, zeta), zeta = n_hl when small else 1.
// Inference is MH-within-Gibbs with an independence log-normal candidate.

struct HbHyperParams {
  double d = 1.0;               // Half-t scale
  double zeta_threshold = 8.0;  // zeta = n_hl while n_hl <= threshold, else 1
};

// zeta from the smallest merged sample size (they are all equal for even H
// with uniform PSUs, which is the case the rule was stated for).
double hb_zeta(std::span<const PseudoStratum> pseudo, const HbHyperParams& hp);

struct McmcConfig {
  long iterations = 200000;
  long burn_in = 2000;
  long thin = 200;
  int chains = 4;
  // test hook: freeze sigma2 (skips the Gibbs update)
  std::optional<double> fixed_sigma2;

  long retained() const {
    return burn_in >= iterations ? 0 : (iterations - burn_in + thin - 1) / thin;
  }
  void validate() const;
};

// sigma2 start values; chain c uses entry c mod 4 (chain 0 matches the
// single-chain runs).
inline constexpr double kChainInitSigma2[4] = {1.0, 0.25, 4.0, 16.0};

// Log of the unnormalized full conditional of S2_g:
//   log S2 + logNormal(S2; log s2_obs, sigma2) + Half-t log-kernel.
double log_target_s2(double s2_candidate, double s2_obs, double sigma2,
                     const HbHyperParams& hp, int member_count);

// Half-t(L+1, d) log kernel, -((L+2)/2) log(1 + (v/d)^2 / (L+1)).
double half_t_log_kernel(double v, double d, int member_count);

struct HbChainState {
  std::vector<double> s2;      // current S2 per group
  std::vector<double> log_s2;  // cached logs
  double sigma2 = 1.0;
  long iteration = 0;
  std::vector<long> accepts;   // per group
};

// Draw sigma2 from Inv-Gamma(L* + G/2, zeta + 1/2 sum (log s2_g - log S2_g)^2)
// where L* = max_g L_g (the paper states the uniform-L case).
double gibbs_step_sigma2(const HbChainState& state,
                         std::span<const double> log_s2_obs, double zeta,
                         int max_member_count, RngStream& rng);

// One MH update of group g with the log-normal independence candidate;
// returns whether the proposal was accepted.
bool mh_step_s2(HbChainState& state, std::size_t g, double s2_obs_g,
                const HbHyperParams& hp, int member_count, RngStream& rng);

struct HbChainResult {
  std::vector<double> posterior_mean;        // per group
  std::vector<double> mcmc_se;               // batch-means, per group
  std::vector<double> acceptance_rate;       // per group
  std::vector<std::vector<double>> retained; // [draw][group]
  std::vector<double> retained_sigma2;
};

struct HbPosterior {
  std::vector<HbChainResult> chains; // chains[0] supplies the estimates
  double zeta = 1.0;

  const std::vector<double>& rho() const { return chains.front().posterior_mean; }
};

// Full sampler. Every pseudo-stratum must have s2 > 0 (log s2 enters stage
// one); merge further when a pooled sample is constant.
HbPosterior run_hb_chain(std::span<const PseudoStratum> pseudo,
                         const HbHyperParams& hp, const McmcConfig& cfg,
                         RngStream stream);

// (1/N^2) sum_g (N^2/n)(1-f) rho_g
double hb_variance(const HbPosterior& posterior,
                   std::span<const PseudoStratum> pseudo, double n_total);

// Batch-means standard error of the mean with ~sqrt(n) batches.
double mcmc_se(std::span<const double> draws);

} // namespace survar

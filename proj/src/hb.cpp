#include "survar/hb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"

namespace survar {

void McmcConfig::validate() const {
  if (iterations < 1) throw config_error("mcmc: iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations)
    throw config_error("mcmc: burn_in must be in [0, iterations)");
  if (thin < 1) throw config_error("mcmc: thin must be >= 1");
  if (chains < 1) throw config_error("mcmc: chains must be >= 1");
  if (fixed_sigma2 && !(*fixed_sigma2 > 0.0))
    throw config_error("mcmc: fixed_sigma2 must be positive");
}

double hb_zeta(std::span<const PseudoStratum> pseudo, const HbHyperParams& hp) {
  double nmin = pseudo.front().sample_size;
  for (const auto& ps : pseudo) nmin = std::min(nmin, ps.sample_size);
  return nmin <= hp.zeta_threshold ? nmin : 1.0;
}

double half_t_log_kernel(double v, double d, int member_count) {
  const double nu = static_cast<double>(member_count) + 1.0; // L_g + 1
  const double r = v / d;
  return -0.5 * (nu + 1.0) * std::log1p(r * r / nu);
}

double log_target_s2(double s2_candidate, double s2_obs, double sigma2,
                     const HbHyperParams& hp, int member_count) {
  if (!(s2_candidate > 0.0) || !(s2_obs > 0.0) || !(sigma2 > 0.0))
    throw std::domain_error("log_target_s2: arguments must be positive");
  const double lv = std::log(s2_candidate);
  const double dev = lv - std::log(s2_obs);
  // log-normal density of the candidate value at location log s2_obs
  const double lognormal = -lv - 0.5 * std::log(2.0 * std::numbers::pi * sigma2) -
                           dev * dev / (2.0 * sigma2);
  return lv + lognormal + half_t_log_kernel(s2_candidate, hp.d, member_count);
}

double gibbs_step_sigma2(const HbChainState& state,
                         std::span<const double> log_s2_obs, double zeta,
                         int max_member_count, RngStream& rng) {
  const std::size_t G = state.s2.size();
  double ss = 0.0;
  for (std::size_t g = 0; g < G; ++g) {
    const double d = log_s2_obs[g] - state.log_s2[g];
    ss += d * d;
  }
  const double shape = static_cast<double>(max_member_count) +
                       static_cast<double>(G) / 2.0;
  const double rate = zeta + 0.5 * ss;
  // Inv-Gamma(shape, rate) draw via the reciprocal of a Gamma draw
  return 1.0 / rng.gamma(shape, 1.0 / rate);
}

namespace {

// candidate log-density, log-Normal(v; log s2_obs, sigma2)
inline double log_candidate(double log_v, double log_s2_obs, double sigma2) {
  const double dev = log_v - log_s2_obs;
  return -log_v - 0.5 * std::log(2.0 * std::numbers::pi * sigma2) -
         dev * dev / (2.0 * sigma2);
}

} // namespace

bool mh_step_s2(HbChainState& state, std::size_t g, double s2_obs_g,
                double log_s2_obs_g, const HbHyperParams& hp, int member_count,
                RngStream& rng) {
  const double sd = std::sqrt(state.sigma2);
  const double log_prop = log_s2_obs_g + sd * rng.normal();
  const double prop = std::exp(log_prop);
  const double cur = state.s2[g];
  const double log_cur = state.log_s2[g];

  // rho = log pi(S2*) - log pi(S2) + log q(S2) - log q(S2*); the log-normal
  // pieces cancel against the S2 factor of the target, leaving the Half-t
  // kernel and the Jacobian term.
  const double lp_prop =
      log_prop + log_candidate(log_prop, log_s2_obs_g, state.sigma2) +
      half_t_log_kernel(prop, hp.d, member_count);
  const double lp_cur =
      log_cur + log_candidate(log_cur, log_s2_obs_g, state.sigma2) +
      half_t_log_kernel(cur, hp.d, member_count);
  const double rho = lp_prop + log_candidate(log_cur, log_s2_obs_g, state.sigma2) -
                     lp_cur - log_candidate(log_prop, log_s2_obs_g, state.sigma2);
  const double u = 1.0 - rng.uniform(); // (0, 1]
  if (std::log(u) < rho) {
    state.s2[g] = prop;
    state.log_s2[g] = log_prop;
    ++state.accepts[g];
    return true;
  }
  return false;
}

namespace {

HbChainResult run_one_chain(std::span<const PseudoStratum> pseudo,
                            const HbHyperParams& hp, const McmcConfig& cfg,
                            double zeta, int chain_index, RngStream rng) {
  const std::size_t G = pseudo.size();
  std::vector<double> s2_obs(G), log_s2_obs(G);
  std::vector<int> members(G);
  int max_members = 0;
  for (std::size_t g = 0; g < G; ++g) {
    s2_obs[g] = pseudo[g].s2;
    log_s2_obs[g] = std::log(pseudo[g].s2);
    members[g] = pseudo[g].member_count();
    max_members = std::max(max_members, members[g]);
  }

  HbChainState state;
  state.sigma2 = cfg.fixed_sigma2.value_or(kChainInitSigma2[chain_index % 4]);
  state.accepts.assign(G, 0);
  state.s2.resize(G);
  state.log_s2.resize(G);
  const double sd0 = std::sqrt(state.sigma2);
  for (std::size_t g = 0; g < G; ++g) {
    state.log_s2[g] = log_s2_obs[g] + sd0 * rng.normal();
    state.s2[g] = std::exp(state.log_s2[g]);
  }

  HbChainResult res;
  res.retained.reserve(cfg.retained());
  for (long t = 0; t < cfg.iterations; ++t) {
    for (std::size_t g = 0; g < G; ++g)
      mh_step_s2(state, g, s2_obs[g], log_s2_obs[g], hp, members[g], rng);
    if (!cfg.fixed_sigma2)
      state.sigma2 = gibbs_step_sigma2(state, log_s2_obs, zeta, max_members, rng);
    state.iteration = t + 1;
    if (t >= cfg.burn_in && (t - cfg.burn_in) % cfg.thin == 0) {
      res.retained.push_back(state.s2);
      res.retained_sigma2.push_back(state.sigma2);
    }
  }

  const std::size_t kept = res.retained.size();
  res.posterior_mean.assign(G, 0.0);
  res.mcmc_se.assign(G, 0.0);
  res.acceptance_rate.assign(G, 0.0);
  std::vector<double> column(kept);
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t i = 0; i < kept; ++i) column[i] = res.retained[i][g];
    res.posterior_mean[g] = kernels::sum(column) / static_cast<double>(kept);
    res.mcmc_se[g] = kept >= 50 ? mcmc_se(column) : 0.0;
    res.acceptance_rate[g] = static_cast<double>(state.accepts[g]) /
                             static_cast<double>(cfg.iterations);
  }
  return res;
}

} // namespace

HbPosterior run_hb_chain(std::span<const PseudoStratum> pseudo,
                         const HbHyperParams& hp, const McmcConfig& cfg,
                         RngStream stream) {
  cfg.validate();
  if (!(hp.d > 0.0)) throw config_error("hb: d must be positive");
  if (pseudo.empty()) throw invalid_design_error("hb: no pseudo-strata");
  for (const auto& ps : pseudo)
    if (!(ps.s2 > 0.0))
      throw not_estimable_error(
          "pseudo-stratum " + std::to_string(ps.index) +
          " has zero pooled variance; log s2 is undefined - merge further");
  if (cfg.retained() < 1) throw config_error("hb: no retained draws");

  HbPosterior post;
  post.zeta = hb_zeta(pseudo, hp);
  post.chains.reserve(cfg.chains);
  for (int c = 0; c < cfg.chains; ++c)
    post.chains.push_back(
        run_one_chain(pseudo, hp, cfg, post.zeta, c, stream.substream(c)));
  return post;
}

double hb_variance(const HbPosterior& posterior,
                   std::span<const PseudoStratum> pseudo, double n_total) {
  const auto& rho = posterior.rho();
  double acc = 0.0;
  for (std::size_t g = 0; g < pseudo.size(); ++g) {
    const auto& ps = pseudo[g];
    const double coef = ps.population_size * ps.population_size / ps.sample_size;
    acc += coef * (1.0 - ps.sampling_fraction()) * rho[g];
  }
  return acc / (n_total * n_total);
}

double mcmc_se(std::span<const double> draws) {
  const std::size_t n = draws.size();
  if (n < 50)
    throw diagnostics_error("mcmc_se needs at least 50 draws, got " +
                            std::to_string(n));
  const std::size_t batches = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  const std::size_t len = n / batches;
  const std::size_t used = batches * len;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b)
    means[b] = kernels::sum(draws.subspan(b * len, len)) / static_cast<double>(len);
  const double grand = kernels::sum(std::span<const double>(draws.data(), used)) /
                       static_cast<double>(used);
  const double var_bm = kernels::sumsq_dev(means, grand) *
                        static_cast<double>(len) /
                        static_cast<double>(batches - 1);
  return std::sqrt(var_bm / static_cast<double>(used));
}

} // namespace survar

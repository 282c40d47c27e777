#include "survar/dirichlet.hpp"

#include <cmath>
#include <limits>

#include "survar/errors.hpp"

namespace survar {

DpHyperEstimates estimate_dp_hyper(std::span<const PseudoStratum> pseudo) {
  const std::size_t G = pseudo.size();
  if (G < 4)
    throw not_estimable_error("base-measure estimate needs at least 4 "
                              "pseudo-strata, got " + std::to_string(G));
  double ntot = 0.0, ysum = 0.0, n2sum = 0.0;
  for (const auto& ps : pseudo) {
    ntot += ps.sample_size;
    n2sum += ps.sample_size * ps.sample_size;
    ysum += ps.sample_size * ps.ybar;
  }
  const double grand = ysum / ntot;

  DpHyperEstimates hy;
  double ssb = 0.0, ssw = 0.0;
  for (const auto& ps : pseudo) {
    const double d = ps.ybar - grand;
    ssb += ps.sample_size * d * d;
    ssw += (ps.sample_size - 1.0) * ps.s2;
  }
  hy.msb = ssb / static_cast<double>(G - 1);
  hy.msw = ssw / (ntot - static_cast<double>(G));
  hy.g = ntot - n2sum / ntot;
  if (!(hy.msw > 0.0))
    throw not_estimable_error("MSW = 0: within-group spread is degenerate");

  const double Gd = static_cast<double>(G);
  const double fratio = (Gd - 1.0) * hy.msb / ((Gd - 3.0) * hy.msw);
  hy.m_inv = std::max(0.0, (fratio - 1.0) * (Gd - 1.0) * hy.g);
  hy.m_hat = hy.m_inv > 0.0 ? 1.0 / hy.m_inv
                            : std::numeric_limits<double>::infinity();

  // sigma0: (M+1)/M weighted mean of s2 with n-1 weights
  double wsum = 0.0, s2w = 0.0;
  for (const auto& ps : pseudo) {
    wsum += ps.sample_size - 1.0;
    s2w += (ps.sample_size - 1.0) * ps.s2;
  }
  if (!(wsum > 0.0)) throw not_estimable_error("sum (n_hl - 1) = 0");
  const double pre = std::isinf(hy.m_hat) ? 1.0 : (hy.m_hat + 1.0) / hy.m_hat;
  hy.sigma0_sq = pre * s2w / wsum;

  // mu0: (1 - Lambda)-weighted mean of group means; all weights vanish when
  // M_hat is infinite
  if (std::isinf(hy.m_hat)) {
    hy.mu0_defined = false;
  } else {
    double lw = 0.0, lwy = 0.0;
    for (const auto& ps : pseudo) {
      const double lam = hy.m_hat / (hy.m_hat + ps.sample_size);
      lw += 1.0 - lam;
      lwy += (1.0 - lam) * ps.ybar;
    }
    hy.mu0 = lwy / lw;
    hy.mu0_defined = true;
  }
  return hy;
}

double estimate_M(std::span<const PseudoStratum> pseudo) {
  return estimate_dp_hyper(pseudo).m_hat;
}

std::pair<double, double> estimate_mu0_sigma0(std::span<const PseudoStratum> pseudo,
                                              double m_hat) {
  if (std::isinf(m_hat))
    throw not_estimable_error("mu0 undefined: M_hat infinite (M_inv = 0)");
  double lw = 0.0, lwy = 0.0, wsum = 0.0, s2w = 0.0;
  for (const auto& ps : pseudo) {
    const double lam = m_hat / (m_hat + ps.sample_size);
    lw += 1.0 - lam;
    lwy += (1.0 - lam) * ps.ybar;
    wsum += ps.sample_size - 1.0;
    s2w += (ps.sample_size - 1.0) * ps.s2;
  }
  if (!(lw > 0.0)) throw not_estimable_error("mu0 undefined: weights vanish");
  if (!(wsum > 0.0)) throw not_estimable_error("sum (n_hl - 1) = 0");
  return {lwy / lw, (m_hat + 1.0) / m_hat * s2w / wsum};
}

FpcAdjustments fpc_adjustments(const PseudoStratum& ps, double m_hat) {
  const double n = ps.sample_size;
  const double N = ps.population_size;
  if (N <= 1.0)
    throw not_estimable_error("pseudo-stratum " + std::to_string(ps.index) +
                              ": merged population size 1 is degenerate");
  const double f = n / N;
  FpcAdjustments a;
  a.lambda = m_hat / (m_hat + n);
  a.alpha = (1.0 - f) * (N - a.lambda) / (N - 1.0);
  a.beta = (m_hat + n + 1.0) / (N - 1.0) +
           (1.0 - f) * (1.0 + (1.0 - a.lambda) / (N - 1.0));
  a.gamma = (1.0 - f) * (m_hat + N) / (N - 1.0);
  return a;
}

double nb_rho(const PseudoStratum& ps, const DpHyperEstimates& hyper) {
  if (!hyper.mu0_defined)
    throw not_estimable_error("rho undefined: M_inv = 0");
  const double M = hyper.m_hat;
  const double n = ps.sample_size;
  const auto a = fpc_adjustments(ps, M);
  const double gap = ps.ybar - hyper.mu0;
  const double brace = a.lambda * a.alpha * hyper.sigma0_sq +
                       (1.0 - a.lambda) * a.beta * ((n - 1.0) / n) * ps.s2 +
                       a.lambda * (1.0 - a.lambda) * a.gamma * gap * gap;
  return (M + n) / (M + n + 1.0) * brace;
}

NbVarianceResult nb_variance(std::span<const PseudoStratum> pseudo, double n_total) {
  NbVarianceResult res;
  res.hyper = estimate_dp_hyper(pseudo);
  if (!res.hyper.mu0_defined) {
    res.na_reason = "M_hat infinite (M_inv = 0)";
    return res;
  }
  double acc = 0.0;
  for (const auto& ps : pseudo) {
    const double coef = ps.population_size * ps.population_size / ps.sample_size;
    acc += coef * (1.0 - ps.sampling_fraction()) * nb_rho(ps, res.hyper);
  }
  res.value = acc / (n_total * n_total);
  return res;
}

} // namespace survar

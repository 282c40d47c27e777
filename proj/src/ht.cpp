#include "survar/ht.hpp"

#include <cmath>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"

namespace survar {

double ht_mean(const StratifiedSample& sample) {
  double total = 0.0;
  for (const auto& st : sample.strata) {
    if (st.size() == 0 || st.pi1 <= 0.0)
      throw invalid_design_error("stratum '" + st.label +
                                 "': zero inclusion probability");
    total += kernels::sum(st.values) / st.pi1;
  }
  return total / static_cast<double>(sample.total_population());
}

double ht_variance(const StratifiedSample& sample) {
  if (sample.design != Design::Srswor)
    throw not_estimable_error(
        "ht_variance requires SRSWOR: joint inclusion probabilities vanish "
        "under systematic selection");
  const double N = static_cast<double>(sample.total_population());
  double acc = 0.0;
  for (const auto& st : sample.strata) {
    const std::size_t n = st.size();
    if (n < 2)
      throw not_estimable_error("stratum '" + st.label +
                                "': n_h = 1, pi_jk = 0 so the HT variance "
                                "does not exist");
    const double pi = st.pi1;
    const double pij = st.pi_joint;
    const double diag = 1.0 - pi;              // Delta_jj
    const double off = 1.0 - pi * pi / pij;    // Delta_jk, j != k
    const double t = kernels::sum(st.values) / pi;           // sum y/pi
    const double q = kernels::sumsq_dev(st.values, 0.0) / (pi * pi); // sum (y/pi)^2
    // sumsum over ordered pairs splits into diagonal and off-diagonal parts
    acc += diag * q + off * (t * t - q);
  }
  return acc / (N * N);
}

double ht_variance_textbook(const StratifiedSample& sample) {
  if (sample.design != Design::Srswor)
    throw not_estimable_error("ht_variance requires SRSWOR");
  const double N = static_cast<double>(sample.total_population());
  double acc = 0.0;
  for (const auto& st : sample.strata) {
    const std::size_t n = st.size();
    if (n < 2)
      throw not_estimable_error("stratum '" + st.label + "': n_h = 1");
    const double Nh = static_cast<double>(st.population_size);
    const double nn = static_cast<double>(n);
    const double mean = kernels::sum(st.values) / nn;
    const double s2 = kernels::sumsq_dev(st.values, mean) / (nn - 1.0);
    acc += Nh * Nh * (1.0 - nn / Nh) * s2 / nn;
  }
  return acc / (N * N);
}

double true_design_variance(const StratifiedPopulation& pop,
                            std::span<const int> n_h,
                            std::vector<std::size_t>* degenerate) {
  if (n_h.size() != pop.stratum_count())
    throw invalid_design_error("n_h size mismatch");
  const double N = static_cast<double>(pop.total_units());
  double acc = 0.0;
  for (std::size_t h = 0; h < pop.stratum_count(); ++h) {
    const auto& st = pop.stratum(h);
    if (n_h[h] < 1)
      throw invalid_design_error("stratum '" + st.label + "': n_h must be >= 1");
    if (st.size() < 2) {
      if (degenerate) degenerate->push_back(h);
      continue; // S_h^2 undefined, contributes nothing
    }
    const double Nh = static_cast<double>(st.size());
    const double nn = static_cast<double>(n_h[h]);
    const double W = Nh / N;
    acc += W * W * (1.0 - nn / Nh) * st.variance() / nn;
  }
  return acc;
}

} // namespace survar

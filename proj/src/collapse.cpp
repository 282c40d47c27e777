#include "survar/collapse.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"
#include "survar/text.hpp"

namespace survar {

CollapsePlan make_collapse_plan(std::span<const double> sort_keys) {
  const std::size_t H = sort_keys.size();
  if (H < 2)
    throw invalid_design_error("cannot collapse: need at least 2 strata");
  CollapsePlan plan;
  plan.order.resize(H);
  std::iota(plan.order.begin(), plan.order.end(), std::size_t{0});
  // stable sort keeps id order on ties
  std::stable_sort(plan.order.begin(), plan.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return sort_keys[a] < sort_keys[b];
                   });
  std::size_t i = 0;
  while (i + 2 <= H) {
    // odd H: the last group absorbs the remaining three strata
    if (H % 2 == 1 && i + 3 == H) break;
    plan.groups.push_back({plan.order[i], plan.order[i + 1]});
    i += 2;
  }
  if (i < H)
    plan.groups.push_back({plan.order[i], plan.order[i + 1], plan.order[i + 2]});
  return plan;
}

CollapsePlan make_collapse_plan(const StratifiedPopulation& pop) {
  std::vector<double> keys;
  keys.reserve(pop.stratum_count());
  for (const auto& s : pop.strata()) keys.push_back(s.sort_key);
  return make_collapse_plan(keys);
}

std::vector<PseudoStratum> collapse_sample(const CollapsePlan& plan,
                                           const StratifiedSample& sample) {
  std::vector<PseudoStratum> out;
  out.reserve(plan.groups.size());
  std::vector<double> pool;
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    PseudoStratum ps;
    ps.index = g;
    ps.members = plan.groups[g];
    pool.clear();
    for (std::size_t h : ps.members) {
      const auto& st = sample.strata.at(h);
      if (st.size() < 1)
        throw invalid_design_error("pseudo-stratum " + std::to_string(g) +
                                   ": member stratum '" + st.label +
                                   "' has no sampled units");
      ps.population_size += static_cast<double>(st.population_size);
      pool.insert(pool.end(), st.values.begin(), st.values.end());
    }
    ps.sample_size = static_cast<double>(pool.size());
    if (pool.size() < 2)
      throw not_estimable_error("pseudo-stratum " + std::to_string(g) +
                                ": merged sample size below 2");
    ps.ybar = kernels::sum(pool) / ps.sample_size;
    ps.s2 = kernels::sumsq_dev(pool, ps.ybar) / (ps.sample_size - 1.0);
    out.push_back(std::move(ps));
  }
  return out;
}

double collapsed_variance(std::span<const PseudoStratum> pseudo, double n_total) {
  double acc = 0.0;
  for (const auto& g : pseudo) {
    const double coef =
        g.population_size * g.population_size / g.sample_size;
    acc += coef * (1.0 - g.sampling_fraction()) * g.s2;
  }
  return acc / (n_total * n_total);
}

namespace {

struct GroupDesign {
  double n = 0.0;
  double N = 0.0;
};

GroupDesign group_design(const StratifiedPopulation& pop,
                         const std::vector<std::size_t>& members,
                         std::span<const int> n_h) {
  GroupDesign gd;
  for (std::size_t h : members) {
    gd.n += static_cast<double>(n_h[h]);
    gd.N += static_cast<double>(pop.stratum(h).size());
  }
  return gd;
}

} // namespace

double collapsed_bias_formula(const StratifiedPopulation& pop,
                              const CollapsePlan& plan,
                              std::span<const int> n_h) {
  const double N = static_cast<double>(pop.total_units());
  double acc = 0.0;
  for (const auto& members : plan.groups) {
    const GroupDesign gd = group_design(pop, members, n_h);
    const double coef = (gd.N * gd.N / gd.n) * (1.0 - gd.n / gd.N);
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const double gap =
            pop.stratum(members[a]).mean() - pop.stratum(members[b]).mean();
        acc += coef * gap * gap;
      }
  }
  return acc / (N * N);
}

double collapsed_bias_exact(const StratifiedPopulation& pop,
                            const CollapsePlan& plan,
                            std::span<const int> n_h) {
  const double Ntot = static_cast<double>(pop.total_units());
  double acc = 0.0;
  for (const auto& members : plan.groups) {
    const GroupDesign gd = group_design(pop, members, n_h);
    // E[s2_pool] decomposes into within-stratum moments, the variance of the
    // pooled sample mean, and the n-weighted spread of stratum means.
    double sum_n_sigma2 = 0.0;   // sum n_h * (population variance, N denom)
    double var_pool_mean = 0.0;  // Var of the pooled mean under SRSWOR
    double mu_w = 0.0;           // n-weighted stratum mean
    double true_part = 0.0;      // these strata's share of V(ybar_st)
    for (std::size_t h : members) {
      const auto& st = pop.stratum(h);
      const double Nh = static_cast<double>(st.size());
      const double nh = static_cast<double>(n_h[h]);
      const double mu = st.mean();
      const double S2 = st.size() > 1 ? st.variance() : 0.0;
      const double sigma2 = S2 * (Nh - 1.0) / Nh;
      sum_n_sigma2 += nh * sigma2;
      var_pool_mean += nh * (1.0 - nh / Nh) * S2 / (gd.n * gd.n);
      mu_w += nh * mu / gd.n;
      true_part += Nh * Nh * (1.0 - nh / Nh) * S2 / nh;
    }
    double spread = 0.0;
    for (std::size_t h : members) {
      const double d = pop.stratum(h).mean() - mu_w;
      spread += static_cast<double>(n_h[h]) * d * d;
    }
    const double es2 =
        (sum_n_sigma2 - gd.n * var_pool_mean + spread) / (gd.n - 1.0);
    const double expected = (gd.N * gd.N / gd.n) * (1.0 - gd.n / gd.N) * es2;
    acc += expected - true_part;
  }
  return acc / (Ntot * Ntot);
}

void plan_to_csv(const CollapsePlan& plan, const StratifiedPopulation& pop,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << "group,stratum_id\n";
  for (std::size_t g = 0; g < plan.groups.size(); ++g)
    for (std::size_t h : plan.groups[g])
      out << g + 1 << ',' << pop.stratum(h).label << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

} // namespace survar

#include "survar/popgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"

namespace survar {
namespace {

constexpr std::size_t kGridPoints = 100001;

struct Normalization {
  double lo, hi;
};

Normalization normalization(GaussianScenarioId id) {
  static const std::array<Normalization, kScenarioCount> table = [] {
    std::array<Normalization, kScenarioCount> t{};
    std::vector<double> grid(kGridPoints);
    for (int s = 0; s < kScenarioCount; ++s) {
      const auto id = static_cast<GaussianScenarioId>(s);
      for (std::size_t i = 0; i < kGridPoints; ++i)
        grid[i] = scenario_raw(id, static_cast<double>(i) / (kGridPoints - 1));
      kernels::minmax(grid, t[s].lo, t[s].hi);
    }
    return t;
  }();
  return table[static_cast<int>(id)];
}

} // namespace

GaussianScenarioId scenario_from_string(const std::string& s) {
  if (s == "line") return GaussianScenarioId::Line;
  if (s == "quad") return GaussianScenarioId::Quad;
  if (s == "bump") return GaussianScenarioId::Bump;
  if (s == "jump") return GaussianScenarioId::Jump;
  if (s == "expo") return GaussianScenarioId::Expo;
  if (s == "cycle1") return GaussianScenarioId::Cycle1;
  if (s == "cycle4") return GaussianScenarioId::Cycle4;
  throw config_error("unknown scenario '" + s +
                     "' (line|quad|bump|jump|expo|cycle1|cycle4)");
}

const char* scenario_name(GaussianScenarioId id) {
  switch (id) {
    case GaussianScenarioId::Line: return "line";
    case GaussianScenarioId::Quad: return "quad";
    case GaussianScenarioId::Bump: return "bump";
    case GaussianScenarioId::Jump: return "jump";
    case GaussianScenarioId::Expo: return "expo";
    case GaussianScenarioId::Cycle1: return "cycle1";
    case GaussianScenarioId::Cycle4: return "cycle4";
  }
  return "?";
}

double scenario_raw(GaussianScenarioId id, double x) {
  using std::numbers::pi;
  switch (id) {
    case GaussianScenarioId::Line: return 1.0 + 2.0 * (x - 0.5);
    case GaussianScenarioId::Quad: return 1.0 + 2.0 * (x - 0.5) * (x - 0.5);
    case GaussianScenarioId::Bump:
      return 1.0 + 2.0 * (x - 0.5) + std::exp(-200.0 * (x - 0.5) * (x - 0.5));
    case GaussianScenarioId::Jump:
      return x <= 0.65 ? 1.0 + 2.0 * (x - 0.5) : 0.65;
    case GaussianScenarioId::Expo: return std::exp(-8.0 * x);
    case GaussianScenarioId::Cycle1: return 2.0 + std::sin(2.0 * pi * x);
    case GaussianScenarioId::Cycle4: return 2.0 + std::sin(8.0 * pi * x);
  }
  return 0.0;
}

double scenario_mean(GaussianScenarioId id, double x) {
  const auto [lo, hi] = normalization(id);
  return 2.0 * (scenario_raw(id, x) - lo) / (hi - lo);
}

StratifiedPopulation gen_gaussian(const GaussianScenario& sc, RngStream& rng) {
  if (sc.strata < 1 || sc.units_per_stratum < 1)
    throw config_error("gaussian scenario: strata and units must be >= 1");
  if (!(sc.phi > 0.0))
    throw config_error("gaussian scenario: phi must be positive");
  std::vector<Stratum> strata;
  strata.reserve(sc.strata);
  const double H = sc.strata;
  for (int h = 1; h <= sc.strata; ++h) {
    Stratum st;
    st.label = std::to_string(h);
    st.sort_key = h / H;
    const double m = scenario_mean(sc.id, st.sort_key);
    st.values.resize(sc.units_per_stratum);
    for (auto& y : st.values) y = m + rng.normal(0.0, sc.phi);
    strata.push_back(std::move(st));
  }
  return StratifiedPopulation(std::move(strata));
}

StratifiedPopulation gen_hmt(const HmtConfig& cfg, RngStream& rng) {
  if (cfg.population_size < cfg.strata || cfg.strata < 2)
    throw config_error("hmt: need population_size >= strata >= 2");
  if (!(cfg.x_shape > 0.0) || !(cfg.x_scale > 0.0) || !(cfg.sigma2 > 0.0))
    throw config_error("hmt: gamma parameters must be positive");

  const std::size_t N = static_cast<std::size_t>(cfg.population_size);
  std::vector<double> x(N);
  for (auto& v : x) v = rng.gamma(cfg.x_shape, cfg.x_scale);
  std::sort(x.begin(), x.end());

  std::vector<double> y(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double mean = cfg.alpha + cfg.beta * x[i];
    const double var = cfg.sigma2 * std::pow(x[i], 1.5);
    if (!(mean > 0.0) || !(var > 0.0))
      throw not_estimable_error("hmt: implied gamma moments not positive at x = " +
                                std::to_string(x[i]));
    y[i] = rng.gamma(mean * mean / var, var / mean);
  }

  // cut so cumulative x totals are near-equal across strata
  const double total = kernels::sum(x);
  const int H = cfg.strata;
  std::vector<Stratum> strata(H);
  std::vector<double> xsum(H, 0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double mid = cum + x[i] / 2.0;
    cum += x[i];
    int h = static_cast<int>(H * mid / total);
    h = std::clamp(h, 0, H - 1);
    strata[h].values.push_back(y[i]);
    xsum[h] += x[i];
  }
  for (int h = 0; h < H; ++h) {
    if (strata[h].values.empty())
      throw not_estimable_error("hmt: stratum " + std::to_string(h + 1) +
                                " came out empty; fewer strata or more units needed");
    strata[h].label = std::to_string(h + 1);
    strata[h].sort_key = std::log(xsum[h]);
  }
  return StratifiedPopulation(std::move(strata));
}

} // namespace survar

#pragma once

#include <string>

#include "survar/population.hpp"
#include "survar/rng.hpp"

namespace survar {

enum class GaussianScenarioId { Line, Quad, Bump, Jump, Expo, Cycle1, Cycle4 };

GaussianScenarioId scenario_from_string(const std::string& s);
const char* scenario_name(GaussianScenarioId id);
inline constexpr int kScenarioCount = 7;

// Raw mean shape g_l on [0, 1].
double scenario_raw(GaussianScenarioId id, double x);

// Min-max normalized mean m*(x) in [0, 2]; extrema located on a dense
// 100001-point grid (bump and cycle4 have no closed-form extrema).
double scenario_mean(GaussianScenarioId id, double x);

struct GaussianScenario {
  GaussianScenarioId id = GaussianScenarioId::Line;
  double phi = 0.25;           // unit noise sd
  int strata = 50;             // H
  int units_per_stratum = 60;  // N_h
};

// y_hj = m*(x_h) + e_hj with e ~ N(0, phi^2), x_h = h/H. Noise draws do not
// depend on the scenario id, so two scenarios generated from equal-state
// streams share their noise (the seven survey variables of one population).
StratifiedPopulation gen_gaussian(const GaussianScenario& sc, RngStream& rng);

struct HmtConfig {
  int population_size = 2000;
  int strata = 20;
  double x_shape = 4.0;  // gamma shape of the auxiliary size variable
  double x_scale = 5.0;
  double alpha = 1.0;    // E(y|x) = alpha + beta x
  double beta = 1.0;
  double sigma2 = 1.0;   // V(y|x) = sigma2 * x^(3/2)
};

// Gamma auxiliary x, gamma y|x matching the first two conditional moments,
// strata cut to near-equal cumulative x totals, sort key log(sum x) per
// stratum. Bit-reproducible for a given stream state.
StratifiedPopulation gen_hmt(const HmtConfig& cfg, RngStream& rng);

} // namespace survar

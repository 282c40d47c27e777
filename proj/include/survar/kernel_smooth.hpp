#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "survar/sampling.hpp"

namespace survar {

enum class KeyMode { Raw, Rank };

KeyMode key_mode_from_string(const std::string& s);
const char* key_mode_name(KeyMode m);

struct KernelConfig {
  double bandwidth = 0.125;
  KeyMode key_mode = KeyMode::Raw;
};

// The (1/H, 2/H) band that keeps the smallest nonempty window when keys are
// h/H standardized.
bool bandwidth_in_guidance_band(double b, std::size_t strata);

// Row-stochastic Epanechnikov weight matrix (row h = weights d_l(h)) and the
// C_d constant for the given keys.
struct KernelWeights {
  std::vector<double> w; // H x H row-major
  double cd = 0.0;
  std::size_t strata = 0;
};

KernelWeights kernel_weights(std::span<const double> keys, double bandwidth);

// Keys used by the estimator: the raw sort keys, or their rank positions
// mapped to (1/H, ..., 1) when rank standardization is requested.
std::vector<double> kernel_keys(const StratifiedSample& sample, KeyMode mode);

struct KernelVarianceResult {
  std::optional<double> value;
  std::string na_reason; // set when value is empty
  double cd = 0.0;
};

// Kernel-weighted stratum-neighbourhood variance estimator:
// (1 / (N^2 C_d)) sum_h (t_h - sum_l d_l(h) t_l)^2 with t_h = sum y/pi.
// C_d = 0 (all windows self-only) makes the estimator undefined -> NA.
KernelVarianceResult kernel_variance(const StratifiedSample& sample,
                                     const KernelConfig& cfg);

} // namespace survar

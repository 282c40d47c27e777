#include "survar/kernel_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survar/errors.hpp"
#include "survar/kernels.hpp"

namespace survar {

KeyMode key_mode_from_string(const std::string& s) {
  if (s == "raw") return KeyMode::Raw;
  if (s == "rank") return KeyMode::Rank;
  throw config_error("unknown kernel key mode '" + s + "' (raw|rank)");
}

const char* key_mode_name(KeyMode m) { return m == KeyMode::Raw ? "raw" : "rank"; }

bool bandwidth_in_guidance_band(double b, std::size_t strata) {
  const double H = static_cast<double>(strata);
  return b > 1.0 / H && b < 2.0 / H;
}

KernelWeights kernel_weights(std::span<const double> keys, double bandwidth) {
  if (!(bandwidth > 0.0)) throw config_error("bandwidth must be positive");
  for (double k : keys)
    if (!std::isfinite(k)) throw not_estimable_error("non-finite sort key");
  KernelWeights out;
  out.strata = keys.size();
  out.w.resize(keys.size() * keys.size());
  out.cd = kernels::epanechnikov_weights(keys, bandwidth, out.w.data());
  return out;
}

std::vector<double> kernel_keys(const StratifiedSample& sample, KeyMode mode) {
  const std::size_t H = sample.stratum_count();
  std::vector<double> keys(H);
  if (mode == KeyMode::Raw) {
    for (std::size_t h = 0; h < H; ++h) keys[h] = sample.strata[h].sort_key;
    return keys;
  }
  // rank positions h/H in sort-key order, ties broken by position
  std::vector<std::size_t> order(H);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sample.strata[a].sort_key < sample.strata[b].sort_key;
  });
  for (std::size_t r = 0; r < H; ++r)
    keys[order[r]] = static_cast<double>(r + 1) / static_cast<double>(H);
  return keys;
}

KernelVarianceResult kernel_variance(const StratifiedSample& sample,
                                     const KernelConfig& cfg) {
  const std::size_t H = sample.stratum_count();
  KernelVarianceResult res;
  const auto keys = kernel_keys(sample, cfg.key_mode);
  auto kw = kernel_weights(keys, cfg.bandwidth);
  res.cd = kw.cd;
  if (!(kw.cd > 0.0)) {
    res.na_reason = "C_d = 0";
    return res;
  }
  std::vector<double> totals(H);
  for (std::size_t h = 0; h < H; ++h) {
    const auto& st = sample.strata[h];
    if (st.size() == 0 || st.pi1 <= 0.0)
      throw invalid_design_error("stratum '" + st.label + "' not sampled");
    totals[h] = kernels::sum(st.values) / st.pi1;
  }
  std::vector<double> smoothed(H);
  kernels::matvec(kw.w.data(), H, H, totals.data(), smoothed.data());
  double rss = 0.0;
  for (std::size_t h = 0; h < H; ++h) {
    const double r = totals[h] - smoothed[h];
    rss += r * r;
  }
  const double N = static_cast<double>(sample.total_population());
  res.value = rss / (N * N * kw.cd);
  return res;
}

} // namespace survar

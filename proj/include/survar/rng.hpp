#pragma once

#include <array>
#include <cstdint>

namespace survar {

// Philox4x64-10 counter-based generator (Salmon et al. 2011), bit-compatible
// with numpy's Philox stream for the same key. A (seed, stream) pair is the
// 128-bit key, so replicates/chains get independent streams by construction
// and results do not depend on thread scheduling.
//
// Distribution samplers are hand-rolled (Box-Muller, Marsaglia-Tsang) because
// the standard library's distributions are implementation-defined and would
// break seed-for-seed reproducibility across toolchains.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);

  // Unbiased integer in [0, bound), bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  double normal();
  double normal(double mean, double sd);

  // Gamma(shape, scale), shape > 0.
  double gamma(double shape, double scale);

  // Derived stream that is statistically independent of this one; id selects
  // the child. Deterministic in (parent key, id).
  RngStream substream(std::uint64_t id) const;

  std::array<std::uint64_t, 2> key() const { return key_; }

private:
  RngStream() = default;
  void refill();

  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 2> key_{};
  std::array<std::uint64_t, 4> block_{};
  int idx_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

} // namespace survar

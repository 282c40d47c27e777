#include "survar/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace survar {
namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  key_ = {seed, stream};
}

void RngStream::refill() {
  std::array<std::uint64_t, 4> c = counter_;
  std::array<std::uint64_t, 2> k = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kPhiloxM0, c[0], hi0);
    const std::uint64_t lo1 = mulhilo(kPhiloxM1, c[2], hi1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  block_ = c;
  idx_ = 0;
  if (++counter_[0] == 0)
    if (++counter_[1] == 0)
      if (++counter_[2] == 0) ++counter_[3];
}

std::uint64_t RngStream::next_u64() {
  if (idx_ >= 4) refill();
  return block_[idx_++];
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be >= 1");
  // rejection below the largest multiple of bound
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r < limit) return r % bound;
  }
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(t);
  has_cached_normal_ = true;
  return r * std::cos(t);
}

double RngStream::normal(double mean, double sd) { return mean + sd * normal(); }

double RngStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma: shape and scale must be positive");
  if (shape < 1.0) {
    // boost to shape+1, then scale back with a uniform power
    const double u = 1.0 - uniform();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

RngStream RngStream::substream(std::uint64_t id) const {
  RngStream child;
  child.key_[0] = splitmix64(key_[0] ^ splitmix64(id + 0x1FULL));
  child.key_[1] = splitmix64(key_[1] + 0x632BE59BD9B4E019ULL * (id + 1));
  return child;
}

} // namespace survar

#include "survar/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace survar::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SURVAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SURVAR_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_ops().sum) return Backend::Avx2;
  }
  return best_backend();
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

inline const Ops& active_ops() {
  return backend_slot().load(std::memory_order_relaxed) == Backend::Avx2
             ? avx2_ops()
             : scalar_ops();
}

} // namespace

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

Backend best_backend() {
  return cpu_has_avx2() && avx2_ops().sum ? Backend::Avx2 : Backend::Scalar;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_ops().sum) b = Backend::Scalar;
  backend_slot().store(b, std::memory_order_relaxed);
}

double sum(std::span<const double> x) { return active_ops().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
  return active_ops().dot(x.data(), y.data(), x.size());
}

double sumsq_dev(std::span<const double> x, double center) {
  return active_ops().sumsq_dev(x.data(), x.size(), center);
}

void minmax(std::span<const double> x, double& lo, double& hi) {
  active_ops().minmax(x.data(), x.size(), lo, hi);
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  active_ops().matvec(a, rows, cols, x, y);
}

double epanechnikov_weights(std::span<const double> x, double b, double* w) {
  return active_ops().epanechnikov(x.data(), x.size(), b, w);
}

} // namespace survar::kernels

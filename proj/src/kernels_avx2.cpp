#include "survar/kernels.hpp"

#ifdef SURVAR_HAVE_AVX2

#include <cmath>
#include <immintrin.h>
#include <limits>

// AVX2/FMA variants. Reductions accumulate 4 lanes per 256-bit register and
// recurse pairwise over 64-element blocks; tails fall back to scalar adds.

namespace survar::kernels {
namespace {

constexpr std::size_t kBlock = 64;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_block(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double sum_rec(const double* x, std::size_t n) {
  if (n <= kBlock) return sum_block(x, n);
  const std::size_t half = (n / 2 + 3) & ~std::size_t{3};
  return sum_rec(x, half) + sum_rec(x + half, n - half);
}

double dot_block(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double dot_rec(const double* x, const double* y, std::size_t n) {
  if (n <= kBlock) return dot_block(x, y, n);
  const std::size_t half = (n / 2 + 3) & ~std::size_t{3};
  return dot_rec(x, y, half) + dot_rec(x + half, y + half, n - half);
}

double sumsq_block(const double* x, std::size_t n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vc);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = x[i] - c;
    acc += d * d;
  }
  return acc;
}

double sumsq_rec(const double* x, std::size_t n, double c) {
  if (n <= kBlock) return sumsq_block(x, n, c);
  const std::size_t half = (n / 2 + 3) & ~std::size_t{3};
  return sumsq_rec(x, half, c) + sumsq_rec(x + half, n - half, c);
}

void minmax_impl(const double* x, std::size_t n, double& lo, double& hi) {
  double slo = std::numeric_limits<double>::infinity();
  double shi = -slo;
  std::size_t i = 0;
  if (n >= 4) {
    __m256d vlo = _mm256_loadu_pd(x);
    __m256d vhi = vlo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      vlo = _mm256_min_pd(vlo, v);
      vhi = _mm256_max_pd(vhi, v);
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, vlo);
    slo = std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
    _mm256_store_pd(t, vhi);
    shi = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
  }
  for (; i < n; ++i) {
    slo = std::min(slo, x[i]);
    shi = std::max(shi, x[i]);
  }
  lo = slo;
  hi = shi;
}

void matvec_impl(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_rec(a + r * cols, x, cols);
}

double epanechnikov_impl(const double* x, std::size_t h, double b, double* w) {
  const __m256d vb = _mm256_set1_pd(1.0 / b);
  const __m256d vthree4 = _mm256_set1_pd(0.75);
  const __m256d vone = _mm256_set1_pd(1.0);
  double cd = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    double* row = w + i * h;
    const __m256d xi = _mm256_set1_pd(x[i]);
    std::size_t j = 0;
    for (; j + 4 <= h; j += 4) {
      const __m256d u = _mm256_mul_pd(_mm256_sub_pd(xi, _mm256_loadu_pd(x + j)), vb);
      const __m256d u2 = _mm256_mul_pd(u, u);
      const __m256d k = _mm256_mul_pd(vthree4, _mm256_sub_pd(vone, u2));
      const __m256d mask = _mm256_cmp_pd(u2, vone, _CMP_LE_OQ);
      _mm256_storeu_pd(row + j, _mm256_and_pd(k, mask));
    }
    for (; j < h; ++j) {
      const double u = (x[i] - x[j]) / b;
      row[j] = std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    }
    const double rowsum = sum_rec(row, h);
    const __m256d vinv = _mm256_set1_pd(1.0 / rowsum);
    __m256d vsq = _mm256_setzero_pd();
    j = 0;
    for (; j + 4 <= h; j += 4) {
      const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(row + j), vinv);
      _mm256_storeu_pd(row + j, v);
      vsq = _mm256_fmadd_pd(v, v, vsq);
    }
    double sq = hsum(vsq);
    const double inv = 1.0 / rowsum;
    for (; j < h; ++j) {
      row[j] *= inv;
      sq += row[j] * row[j];
    }
    cd += 1.0 - 2.0 * row[i] + sq;
  }
  return cd / static_cast<double>(h);
}

} // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      [](const double* x, std::size_t n) { return sum_rec(x, n); },
      [](const double* x, const double* y, std::size_t n) { return dot_rec(x, y, n); },
      [](const double* x, std::size_t n, double c) { return sumsq_rec(x, n, c); },
      minmax_impl,
      matvec_impl,
      epanechnikov_impl,
  };
  return ops;
}

} // namespace survar::kernels

#else

namespace survar::kernels {

const Ops& avx2_ops() {
  static const Ops ops = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr};
  return ops;
}

} // namespace survar::kernels

#endif

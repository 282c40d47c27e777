#include "survar/kernels.hpp"

#include <cmath>
#include <limits>

// Scalar reference kernels. Reductions recurse pairwise over halves down to a
// small base block, which keeps error growth O(log n) instead of O(n).

namespace survar::kernels {
namespace {

constexpr std::size_t kBase = 32;

double sum_rec(const double* x, std::size_t n) {
  if (n <= kBase) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return sum_rec(x, half) + sum_rec(x + half, n - half);
}

double dot_rec(const double* x, const double* y, std::size_t n) {
  if (n <= kBase) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return dot_rec(x, y, half) + dot_rec(x + half, y + half, n - half);
}

double sumsq_dev_rec(const double* x, std::size_t n, double c) {
  if (n <= kBase) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - c;
      acc += d * d;
    }
    return acc;
  }
  const std::size_t half = n / 2;
  return sumsq_dev_rec(x, half, c) + sumsq_dev_rec(x + half, n - half, c);
}

void minmax_impl(const double* x, std::size_t n, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
}

void matvec_impl(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_rec(a + r * cols, x, cols);
}

double epanechnikov_impl(const double* x, std::size_t h, double b, double* w) {
  double cd = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    double* row = w + i * h;
    double rowsum = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
      const double u = (x[i] - x[j]) / b;
      const double k = std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
      row[j] = k;
      rowsum += k;
    }
    double sq = 0.0;
    const double inv = 1.0 / rowsum; // self-weight K(0)=0.75 keeps rowsum > 0
    for (std::size_t j = 0; j < h; ++j) {
      row[j] *= inv;
      sq += row[j] * row[j];
    }
    cd += 1.0 - 2.0 * row[i] + sq;
  }
  return cd / static_cast<double>(h);
}

} // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      [](const double* x, std::size_t n) { return sum_rec(x, n); },
      [](const double* x, const double* y, std::size_t n) { return dot_rec(x, y, n); },
      [](const double* x, std::size_t n, double c) { return sumsq_dev_rec(x, n, c); },
      minmax_impl,
      matvec_impl,
      epanechnikov_impl,
  };
  return ops;
}

} // namespace survar::kernels

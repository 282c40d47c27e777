#pragma once

#include <cstddef>
#include <span>

// Arithmetic kernels behind the estimators. Every operation has a scalar
// reference implementation and, on x86-64 with AVX2, a vectorized variant
// selected at runtime. The two are equivalence-tested against each other;
// reductions are block-pairwise in both so ill-conditioned sums stay accurate.

namespace survar::kernels {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);

// Best backend the CPU supports.
Backend best_backend();

// Active backend. Defaults to best_backend() unless the SURVAR_SIMD
// environment variable (scalar|avx2|auto) says otherwise.
Backend active_backend();
void set_backend(Backend b);

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// sum of (x_i - center)^2
double sumsq_dev(std::span<const double> x, double center);

void minmax(std::span<const double> x, double& lo, double& hi);

// y = A x with A row-major rows x cols.
void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);

// Row-normalized Epanechnikov weights for sort keys x and bandwidth b,
// written to w (len(x) x len(x), row-major). Returns the C_d constant
// (1/H) sum_h (1 - 2 w_hh + sum_l w_hl^2).
double epanechnikov_weights(std::span<const double> x, double b, double* w);

// Implementation tables (one per backend); used by the dispatcher and the
// equivalence tests.
struct Ops {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sumsq_dev)(const double*, std::size_t, double);
  void (*minmax)(const double*, std::size_t, double&, double&);
  void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
  double (*epanechnikov)(const double*, std::size_t, double, double*);
};

const Ops& scalar_ops();
const Ops& avx2_ops(); // null members when compiled without AVX2 support

} // namespace survar::kernels

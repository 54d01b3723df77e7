#include "dematel/kernels.hpp"

#include <cmath>

// Reference kernels. Plain sequential loops; compiled with contraction off so
// elementwise results are bitwise comparable with the SIMD backends.

namespace dematel::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void divide_scalar(double* y, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] /= a;
}

void cut_below_scalar(double* out, const double* x, double threshold, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] >= threshold ? x[i] : 0.0;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar", sum_scalar, max_abs_scalar, axpy_scalar, add_scalar, divide_scalar,
      cut_below_scalar,
  };
  return backend;
}

}  // namespace dematel::kernels

#pragma once

#include <cstddef>
#include <vector>

namespace dematel::kernels {

// Vector kernels behind the dense-matrix layer. Each backend provides the
// same operations over contiguous double arrays; the scalar backend is the
// reference, SIMD backends must agree with it (bitwise for elementwise ops
// and max_abs, to reduction rounding for sum).
struct Backend {
  const char* name;

  // Sequential reduction order in the scalar backend; SIMD backends may
  // reassociate, so sums can differ from scalar by rounding.
  double (*sum)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);

  // y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  // y[i] += x[i]
  void (*add)(double* y, const double* x, std::size_t n);
  // y[i] /= a
  void (*divide)(double* y, double a, std::size_t n);
  // out[i] = x[i] >= threshold ? x[i] : 0
  void (*cut_below)(double* out, const double* x, double threshold, std::size_t n);
};

const Backend& scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_supported();
#endif

// Backend chosen at startup for this CPU (AVX2 when available, else scalar).
const Backend& active();

// All backends usable on this CPU, scalar first. Equivalence tests iterate this.
std::vector<const Backend*> available_backends();

// Test hook: override the active backend (pass nullptr to restore detection).
void set_active_for_testing(const Backend* backend);

}  // namespace dematel::kernels

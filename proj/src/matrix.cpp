#include "dematel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dematel/errors.hpp"
#include "dematel/kernels.hpp"

namespace dematel {

namespace {
constexpr double kPivotTolerance = 1e-12;
constexpr std::size_t kMaxSeriesTerms = 10000;
constexpr double kSeriesBlowupLimit = 1e150;
}  // namespace

DenseMatrix::DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  if (entries_.size() != n_rows_ * n_cols_) {
    throw DimensionMismatchError("matrix entry count", n_rows_ * n_cols_, entries_.size());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("matrix product inner dimension", a.cols(), b.rows());
  }
  const auto& ops = kernels::active();
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      if (double f = a(i, p); f != 0.0) ops.axpy(ci, f, b.row(p), b.cols());
    }
  }
  return c;
}

DenseMatrix mat_invert(const DenseMatrix& a) {
  if (!a.square()) {
    throw DimensionMismatchError("inversion needs a square matrix", a.rows(), a.cols());
  }
  const auto& ops = kernels::active();
  const std::size_t n = a.rows();

  // Augmented [A | I], each row contiguous so eliminations run over 2n.
  DenseMatrix w(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    w(i, n + i) = 1.0;
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::fabs(w(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (double m = std::fabs(w(r, col)); m > best) {
        best = m;
        pivot = r;
      }
    }
    if (best < kPivotTolerance) throw SingularMatrixError(col);
    if (pivot != col) {
      std::swap_ranges(w.row(col), w.row(col) + 2 * n, w.row(pivot));
    }
    ops.divide(w.row(col), w(col, col), 2 * n);
    w(col, col) = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      if (double f = w(r, col); f != 0.0) {
        ops.axpy(w.row(r), -f, w.row(col), 2 * n);
        w(r, col) = 0.0;
      }
    }
  }

  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
  }
  return inv;
}

DenseMatrix neumann_total_relation(const DenseMatrix& x, double tol) {
  if (!x.square()) {
    throw DimensionMismatchError("power series needs a square matrix", x.rows(), x.cols());
  }
  const auto& ops = kernels::active();
  DenseMatrix term = x;
  DenseMatrix total = x;
  for (std::size_t k = 1; k <= kMaxSeriesTerms; ++k) {
    double norm = ops.max_abs(term.data().data(), term.data().size());
    if (norm < tol) return total;
    if (!(norm < kSeriesBlowupLimit)) throw DivergedError(k);
    term = mat_mul(term, x);
    ops.add(total.data().data(), term.data().data(), term.data().size());
  }
  throw DivergedError(kMaxSeriesTerms);
}

}  // namespace dematel

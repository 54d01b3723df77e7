#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dematel {

// Dense row-major real matrix. Small-n workhorse for the pipeline; all
// arithmetic is double precision.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t n_rows, std::size_t n_cols, double fill = 0.0)
      : n_rows_(n_rows), n_cols_(n_cols), entries_(n_rows * n_cols, fill) {}
  DenseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  bool square() const { return n_rows_ == n_cols_; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_cols_ + j]; }

  double* row(std::size_t i) { return entries_.data() + i * n_cols_; }
  const double* row(std::size_t i) const { return entries_.data() + i * n_cols_; }

  std::span<double> data() { return entries_; }
  std::span<const double> data() const { return entries_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<double> entries_;
};

// Standard product. Throws DimensionMismatchError when a.cols() != b.rows().
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);

// Inverse by Gauss-Jordan elimination with partial pivoting. Pivot magnitudes
// below 1e-12 raise SingularMatrixError naming the elimination column.
DenseMatrix mat_invert(const DenseMatrix& a);

// Sum of the matrix power series X + X^2 + X^3 + ..., truncated when the
// max-norm of the next term drops below tol. Converges exactly to
// X(I - X)^-1 when the spectral radius of X is below 1; serves as the
// independent oracle for that product and stays off the hot path.
// Throws DivergedError when the series fails to converge within 10000 terms.
DenseMatrix neumann_total_relation(const DenseMatrix& x, double tol);

}  // namespace dematel

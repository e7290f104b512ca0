#pragma once

#include "lsq/errors.hpp"
#include "lsq/types.hpp"

namespace lsq {

/// Dense column-major matrix with cached squared column norms.
///
/// Immutable after construction and safe to share across threads. Column
/// indices at this API are 1-based (matching the i = mod(k,n)+1 convention of
/// the solvers); the underlying Eigen storage is reachable through values()
/// for 0-based expression work.
class DenseMatrix {
 public:
  /// Takes ownership of `values`. Throws NonFiniteValue if any entry is NaN
  /// or infinite, DimensionMismatch on an empty matrix.
  explicit DenseMatrix(Matrix values);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }

  const Matrix& values() const noexcept { return values_; }

  /// Column i (1-based) as an Eigen expression.
  auto column(Index i) const { return values_.col(check_col(i) - 1); }

  /// Cached N(i) = ||A_i||^2, 1-based. Does not reject zero columns.
  double col_norm_sq(Index i) const { return col_norms_sq_[check_col(i) - 1]; }

  /// The full cache, unchecked.
  const Vector& col_norms_sq_cache() const noexcept { return col_norms_sq_; }

  /// 1-based index of the first zero column, or 0 when all columns are nonzero.
  Index first_zero_column() const noexcept { return first_zero_col_; }

  double frob_norm_sq() const noexcept { return frob_norm_sq_; }

 private:
  Index check_col(Index i) const {
    if (i < 1 || i > values_.cols())
      throw IndexOutOfRange("column index " + std::to_string(i) + " outside [1," +
                            std::to_string(values_.cols()) + "]");
    return i;
  }

  Matrix values_;
  Vector col_norms_sq_;
  double frob_norm_sq_ = 0.0;
  Index first_zero_col_ = 0;
};

/// The cached squared column norms of A. Throws ZeroColumn if any column is
/// zero (the solvers' standing assumption).
const Vector& column_norms_sq(const DenseMatrix& a);

/// <A_i, A_j>, 1-based indices. Symmetric exactly: both orders reduce the
/// same products in the same order.
double dot_columns(const DenseMatrix& a, Index i, Index j);

/// A x.
Vector matvec(const DenseMatrix& a, const Vector& x);

/// A^T r.
Vector matvec_transpose(const DenseMatrix& a, const Vector& r);

/// ||v||_{A^T A} = ||A v||.
double seminorm_A(const DenseMatrix& a, const Vector& v);

}  // namespace lsq

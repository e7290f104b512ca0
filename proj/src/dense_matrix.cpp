#include "lsq/dense_matrix.hpp"

namespace lsq {

DenseMatrix::DenseMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw DimensionMismatch("matrix must have at least one row and one column");
  if (!values_.allFinite()) throw NonFiniteValue("matrix contains NaN or Inf entries");
  col_norms_sq_ = values_.colwise().squaredNorm();
  frob_norm_sq_ = col_norms_sq_.sum();
  for (Index j = 0; j < values_.cols(); ++j) {
    if (col_norms_sq_[j] == 0.0) {
      first_zero_col_ = j + 1;
      break;
    }
  }
}

const Vector& column_norms_sq(const DenseMatrix& a) {
  if (a.first_zero_column() != 0) throw ZeroColumn(a.first_zero_column());
  return a.col_norms_sq_cache();
}

double dot_columns(const DenseMatrix& a, Index i, Index j) {
  return a.column(i).dot(a.column(j));
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols())
    throw DimensionMismatch("matvec: x has length " + std::to_string(x.size()) +
                            ", expected " + std::to_string(a.cols()));
  return a.values() * x;
}

Vector matvec_transpose(const DenseMatrix& a, const Vector& r) {
  if (r.size() != a.rows())
    throw DimensionMismatch("matvec_transpose: r has length " + std::to_string(r.size()) +
                            ", expected " + std::to_string(a.rows()));
  return a.values().transpose() * r;
}

double seminorm_A(const DenseMatrix& a, const Vector& v) {
  if (v.size() != a.cols())
    throw DimensionMismatch("seminorm_A: v has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(a.cols()));
  return (a.values() * v).norm();
}

}  // namespace lsq

#pragma once

#include "lsq/dense_matrix.hpp"

namespace lsq {

/// Singular-value digest of a matrix, computed from the smaller Gram matrix.
struct SpectralSummary {
  double sigma_min = 0.0;  ///< smallest singular value above the rank tolerance
  double sigma_max = 0.0;
  Index rank = 0;          ///< count of singular values above tolerance
  double frob_norm_sq = 0.0;
};

/// Minimal-Euclidean-norm minimizer of ||A w - z||, by complete orthogonal
/// decomposition (column-pivoted QR plus a second orthogonal reduction).
Vector direct_lsq(const DenseMatrix& a, const Vector& z);

/// Orthogonal projection of z onto range(A): A * direct_lsq(A, z).
Vector project_range(const DenseMatrix& a, const Vector& z);

/// Orthogonal projection of z onto null(A^T): z - project_range(A, z).
Vector project_null_t(const DenseMatrix& a, const Vector& z);

/// Eigen-solve of the smaller Gram matrix (A^T A if n <= m, else A A^T);
/// eigenvalues clamped at zero, sigma = sqrt(lambda), rank tolerance
/// sigma_max * max(m,n) * 2^-52. Throws ZeroMatrix when every singular value
/// falls below tolerance.
SpectralSummary spectral_summary(const DenseMatrix& a);

}  // namespace lsq

#include "lsq/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace lsq {

Vector direct_lsq(const DenseMatrix& a, const Vector& z) {
  if (z.size() != a.rows())
    throw DimensionMismatch("direct_lsq: z has length " + std::to_string(z.size()) +
                            ", expected " + std::to_string(a.rows()));
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a.values());
  return cod.solve(z);
}

Vector project_range(const DenseMatrix& a, const Vector& z) {
  return a.values() * direct_lsq(a, z);
}

Vector project_null_t(const DenseMatrix& a, const Vector& z) {
  return z - project_range(a, z);
}

SpectralSummary spectral_summary(const DenseMatrix& a) {
  const Matrix& v = a.values();
  Matrix gram;
  if (v.cols() <= v.rows())
    gram.noalias() = v.transpose() * v;
  else
    gram.noalias() = v * v.transpose();

  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  Vector lambda = es.eigenvalues().cwiseMax(0.0);  // ascending order

  SpectralSummary s;
  s.frob_norm_sq = a.frob_norm_sq();
  s.sigma_max = std::sqrt(lambda[lambda.size() - 1]);
  const double tol =
      s.sigma_max * static_cast<double>(std::max(v.rows(), v.cols())) * 0x1.0p-52;
  if (s.sigma_max <= 0.0) throw ZeroMatrix("all singular values are zero");

  for (Index j = 0; j < lambda.size(); ++j) {
    const double sigma = std::sqrt(lambda[j]);
    if (sigma > tol) {
      s.sigma_min = sigma;  // first one above tolerance is the smallest
      s.rank = lambda.size() - j;
      break;
    }
  }
  if (s.rank == 0) throw ZeroMatrix("all singular values below rank tolerance");
  return s;
}

}  // namespace lsq

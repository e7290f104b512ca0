#include "lsq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lsq {

double rre(const Vector& r, const Vector& b_null, const Vector& b) {
  if (r.size() != b.size() || b_null.size() != b.size())
    throw DimensionMismatch("rre: r, b_null, b must have equal length");
  const double b_sq = b.squaredNorm();
  if (b_sq == 0.0) throw ZeroRhs("rre undefined for b = 0");
  return (b_null - r).squaredNorm() / b_sq;
}

double error_seminorm_sq(const DenseMatrix& a, const Vector& x, const Vector& x_ref) {
  if (x.size() != a.cols() || x_ref.size() != a.cols())
    throw DimensionMismatch("error_seminorm_sq: vectors must have length n");
  return (a.values() * (x - x_ref)).squaredNorm();
}

RateBounds rate_bounds(const DenseMatrix& a, const SpectralSummary& spectral) {
  if (spectral.rank < 1 || spectral.sigma_min <= 0.0)
    throw DegenerateRank("rate_bounds: sigma_min undefined");
  RateBounds rb;
  rb.n = a.cols();
  rb.kappa_f_sq = spectral.frob_norm_sq / (spectral.sigma_min * spectral.sigma_min);
  rb.rcd_factor = 1.0 - 1.0 / rb.kappa_f_sq;
  if (rb.n >= 3) {
    const double den = static_cast<double>(rb.n - 2) * (rb.kappa_f_sq - 1.0);
    if (den > 0.0) rb.rgso_factor = 1.0 - 1.0 / den;
  }
  return rb;
}

double unitized_rate_factor(const DenseMatrix& a_unitized, Index i_k, Index i_prev,
                            const SpectralSummary& spectral) {
  const Index n = a_unitized.cols();
  if (n < 3) throw DimensionMismatch("unitized_rate_factor requires n >= 3");
  if (i_k == i_prev) throw SameIndex("i_k and i_prev must differ");
  for (Index j = 1; j <= n; ++j) {
    if (std::abs(a_unitized.col_norm_sq(j) - 1.0) > 1e-12)
      throw NotUnitized("column " + std::to_string(j) + " does not have unit norm");
  }
  double gamma = std::numeric_limits<double>::infinity();
  for (Index s = 1; s <= n; ++s) {
    if (s == i_k || s == i_prev) continue;
    gamma = std::min(gamma, std::abs(dot_columns(a_unitized, s, i_k)));
  }
  if (gamma >= 1.0 - 1e-12) throw ParallelColumns("gamma reaches 1");
  const double s2 = spectral.sigma_min * spectral.sigma_min;
  return 1.0 - s2 / ((1.0 - gamma * gamma) * (spectral.frob_norm_sq - 2.0));
}

}  // namespace lsq

#pragma once

#include "lsq/dense_matrix.hpp"
#include "lsq/oracle.hpp"

#include <optional>

namespace lsq {

/// Theoretical per-step contraction factors of the randomized solvers.
struct RateBounds {
  double kappa_f_sq = 0.0;  ///< ||A||_F^2 / sigma_min^2
  double rcd_factor = 0.0;  ///< 1 - 1/kappa_f_sq
  /// 1 - 1/((n-2)(kappa_f_sq - 1)); absent when n < 3 or the denominator
  /// degenerates (rank < 2 forces kappa_f_sq = 1).
  std::optional<double> rgso_factor;
  Index n = 0;
};

/// Residual relative error ||b_null - r||^2 / ||b||^2. Throws ZeroRhs when
/// b = 0.
double rre(const Vector& r, const Vector& b_null, const Vector& b);

/// ||A (x - x_ref)||^2. Equals F(x) - min F whenever x_ref is a least-squares
/// solution, without the cancellation of subtracting two residual norms.
double error_seminorm_sq(const DenseMatrix& a, const Vector& x, const Vector& x_ref);

RateBounds rate_bounds(const DenseMatrix& a, const SpectralSummary& spectral);

/// Per-step contraction factor for a column-unitized matrix:
///   1 - sigma_min^2 / ((1 - gamma^2) (||A||_F^2 - 2)),
/// gamma = min over s not in {i_k, i_prev} of |<A_s, A_{i_k}>|. Requires unit
/// columns (to 1e-12) and n >= 3; throws ParallelColumns when gamma reaches 1.
double unitized_rate_factor(const DenseMatrix& a_unitized, Index i_k, Index i_prev,
                            const SpectralSummary& spectral);

}  // namespace lsq

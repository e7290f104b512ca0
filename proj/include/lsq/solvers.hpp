#pragma once

#include "lsq/dense_matrix.hpp"
#include "lsq/problems.hpp"
#include "lsq/rng.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace lsq {

enum class StopMode { ResidualRelativeError, GradientRelative, SolutionError };

/// Termination rule. ResidualRelativeError compares ||b_null - r||^2/||b||^2
/// strictly against the threshold (needs meta.b_null); SolutionError compares
/// ||x - x*||^2/||x*||^2 with <= (needs meta.x_star); GradientRelative tests
/// ||A^T r|| <= threshold * ||A^T b|| and needs no metadata.
struct StopRule {
  StopMode mode = StopMode::ResidualRelativeError;
  double threshold = 0.5e-6;
  std::int64_t max_iters = 500000;
  /// Check cadence in iterations; 0 picks the default for the mode
  /// (1 for ResidualRelativeError / SolutionError, n for GradientRelative).
  std::int64_t check_every = 0;
};

enum class SkipMode { Absolute, RelativeToNormSq };

/// Skip guard for oblique steps: the step is applied only when the oblique
/// denominator g exceeds epsilon (Absolute) or epsilon * N(i_next)
/// (RelativeToNormSq). Near-parallel column pairs are skipped.
struct ObliqueConfig {
  SkipMode skip_mode = SkipMode::RelativeToNormSq;
  double epsilon = 1e-12;
};

struct SolverState {
  Vector x;
  Vector r;  ///< running residual b - Ax, maintained incrementally
  std::int64_t k = 0;
  Index i_prev = 0;   ///< column of the latest step (i_k); 0 before any step
  Index i_prev2 = 0;  ///< column of the step before that (i_{k-1})
  std::int64_t updates_applied = 0;
  std::int64_t skips = 0;
};

/// What a single step did. For coordinate steps i_prev is 0, beta is 0 and g
/// is N(i_next), so the exact decrease of ||A(x - x~)||^2 is r_dot^2 / g for
/// every applied step of either kind.
struct StepInfo {
  std::int64_t k = 0;  ///< counter after the step
  Index i_prev = 0;
  Index i_next = 0;
  bool applied = false;
  double alpha = 0.0;
  double beta = 0.0;
  double g = 0.0;
  double r_dot = 0.0;  ///< <A_{i_next}, r> before the update (0 when skipped)
};

/// Optional instrumentation for the solve drivers.
struct SolveHooks {
  /// Called after every step with the post-step state.
  std::function<void(const SolverState&, const StepInfo&)> on_step;
  /// When > 0, record (k, metric) at every stop check with k % trace_every == 0.
  std::int64_t trace_every = 0;
};

enum class Termination { Converged, MaxIters };

struct SolveReport {
  Vector x_final;
  Vector r_final;
  std::int64_t iterations = 0;  ///< k at exit; counts skipped steps
  std::int64_t updates_applied = 0;
  std::int64_t skips = 0;
  Termination termination = Termination::MaxIters;
  double elapsed_seconds = 0.0;
  double final_metric = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::int64_t, double>> trace;
};

/// One coordinate-descent step on column i (1-based):
///   alpha = <A_i, r> / N(i), x_i += alpha, r -= alpha A_i.
/// Leaves <A_i, r> = 0 up to rounding. Increments k.
StepInfo cd_step(SolverState& state, const DenseMatrix& a, Index i);

/// One oblique step pairing i_prev (already orthogonalized) with i_next:
///   G = <A_{i_prev}, A_{i_next}>,  g = N(i_next) - G^2/N(i_prev),
///   alpha = <A_{i_next}, r>/g,     beta = -(G/N(i_prev)) alpha,
///   x += alpha e_{i_next} + beta e_{i_prev},  r -= alpha A_{i_next} + beta A_{i_prev}.
/// Skipped (state unchanged, skips incremented) when g fails the ObliqueConfig
/// guard; the index pair advances and k increments either way.
StepInfo oblique_step(SolverState& state, const DenseMatrix& a, Index i_prev, Index i_next,
                      const ObliqueConfig& cfg);

enum class StopDecision { Continue, Converged };

/// Applies the stop rule to a state (ignores max_iters/cadence).
StopDecision evaluate_stop(const SolverState& state, const StopRule& stop, const DenseMatrix& a,
                           const Vector& b, const ProblemMeta& meta);

/// Cyclic coordinate descent: column i = mod(k, n) + 1.
SolveReport solve_cd(const DenseMatrix& a, const Vector& b, const Vector& x0,
                     const StopRule& stop, const ProblemMeta& meta = {},
                     const SolveHooks* hooks = nullptr);

/// Randomized coordinate descent: column drawn uniformly from {1..n} each step.
SolveReport solve_rcd(const DenseMatrix& a, const Vector& b, const Vector& x0,
                      const StopRule& stop, const ProblemMeta& meta, Rng& rng,
                      const SolveHooks* hooks = nullptr);

/// Gauss-Seidel with oblique direction: one coordinate step on column 1, then
/// oblique steps pairing the previous column with mod(k, n) + 1. Requires n >= 2.
SolveReport solve_gso(const DenseMatrix& a, const Vector& b, const Vector& x0,
                      const StopRule& stop, const ObliqueConfig& cfg = {},
                      const ProblemMeta& meta = {}, const SolveHooks* hooks = nullptr);

/// Randomized GSO: coordinate step on a random column, then oblique steps on a
/// random column excluding the previous two ({i_k, i_{k-1}}). For n = 2 the
/// columns alternate deterministically; for n = 1 this is repeated coordinate
/// descent on the single column.
SolveReport solve_rgso(const DenseMatrix& a, const Vector& b, const Vector& x0,
                       const StopRule& stop, const ObliqueConfig& cfg, const ProblemMeta& meta,
                       Rng& rng, const SolveHooks* hooks = nullptr);

}  // namespace lsq

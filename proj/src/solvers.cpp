#include "lsq/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lsq {

StepInfo cd_step(SolverState& state, const DenseMatrix& a, Index i) {
  const double n_i = a.col_norm_sq(i);
  if (n_i == 0.0) throw ZeroColumn(i);
  const double r_dot = a.column(i).dot(state.r);
  const double alpha = r_dot / n_i;
  state.x[i - 1] += alpha;
  state.r -= alpha * a.column(i);
  state.k += 1;
  state.updates_applied += 1;
  state.i_prev2 = state.i_prev;
  state.i_prev = i;

  StepInfo info;
  info.k = state.k;
  info.i_prev = 0;
  info.i_next = i;
  info.applied = true;
  info.alpha = alpha;
  info.g = n_i;
  info.r_dot = r_dot;
  return info;
}

StepInfo oblique_step(SolverState& state, const DenseMatrix& a, Index i_prev, Index i_next,
                      const ObliqueConfig& cfg) {
  if (i_prev == i_next)
    throw SameIndex("oblique_step: i_prev and i_next must differ (got " +
                    std::to_string(i_next) + ")");
  const double n_prev = a.col_norm_sq(i_prev);
  const double n_next = a.col_norm_sq(i_next);
  if (n_prev == 0.0) throw ZeroColumn(i_prev);
  if (n_next == 0.0) throw ZeroColumn(i_next);

  const double dot_pn = a.column(i_prev).dot(a.column(i_next));
  const double ratio = dot_pn / n_prev;
  double g = n_next - ratio * dot_pn;
  // The Gram form cancels badly for near-parallel columns; below this cutoff
  // the orthogonalized column gives the same g without the cancellation.
  if (g < 1e-4 * n_next)
    g = (a.column(i_next) - ratio * a.column(i_prev)).squaredNorm();
  const double eps_eff =
      cfg.skip_mode == SkipMode::Absolute ? cfg.epsilon : cfg.epsilon * n_next;

  StepInfo info;
  info.i_prev = i_prev;
  info.i_next = i_next;
  info.g = g;
  if (g > eps_eff) {
    const double r_dot = a.column(i_next).dot(state.r);
    const double alpha = r_dot / g;
    const double beta = -ratio * alpha;
    state.x[i_next - 1] += alpha;
    state.x[i_prev - 1] += beta;
    state.r -= alpha * a.column(i_next) + beta * a.column(i_prev);
    state.updates_applied += 1;
    info.applied = true;
    info.alpha = alpha;
    info.beta = beta;
    info.r_dot = r_dot;
  } else {
    state.skips += 1;
  }
  state.k += 1;
  state.i_prev2 = i_prev;
  state.i_prev = i_next;
  info.k = state.k;
  return info;
}

namespace {

struct StopEval {
  StopMode mode;
  double threshold;
  const Vector* b_null = nullptr;
  bool null_is_zero = true;
  double b_sq = 0.0;
  const Vector* x_star = nullptr;
  double x_star_sq = 0.0;
  double grad_ref = 0.0;  // ||A^T b||

  struct Result {
    double metric;
    bool converged;
  };

  Result check(const SolverState& s, const DenseMatrix& a) const {
    switch (mode) {
      case StopMode::ResidualRelativeError: {
        const double num =
            null_is_zero ? s.r.squaredNorm() : (*b_null - s.r).squaredNorm();
        const double metric = num / b_sq;
        return {metric, metric < threshold};
      }
      case StopMode::SolutionError: {
        const double metric = (s.x - *x_star).squaredNorm() / x_star_sq;
        return {metric, metric <= threshold};
      }
      case StopMode::GradientRelative: {
        const double num = (a.values().transpose() * s.r).norm();
        const double metric =
            grad_ref > 0.0 ? num / grad_ref : (num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        return {metric, num <= threshold * grad_ref};
      }
    }
    return {std::numeric_limits<double>::quiet_NaN(), false};
  }
};

void validate_stop_rule(const StopRule& stop) {
  if (!(stop.threshold >= 0.0)) throw Error("stop threshold must be >= 0");
  if (stop.max_iters < 1) throw Error("max_iters must be >= 1");
  if (stop.check_every < 0) throw Error("check_every must be >= 0 (0 = mode default)");
}

StopEval make_stop_eval(const StopRule& stop, const DenseMatrix& a, const Vector& b,
                        const ProblemMeta& meta) {
  StopEval e;
  e.mode = stop.mode;
  e.threshold = stop.threshold;
  switch (stop.mode) {
    case StopMode::ResidualRelativeError: {
      if (!meta.b_null)
        throw MissingMetadata("ResidualRelativeError stopping needs the null-space part of b");
      if (meta.b_null->size() != a.rows())
        throw DimensionMismatch("meta.b_null must have length m");
      e.b_null = &*meta.b_null;
      e.null_is_zero = e.b_null->squaredNorm() == 0.0;
      e.b_sq = b.squaredNorm();
      if (e.b_sq == 0.0) throw ZeroRhs("residual relative error undefined for b = 0");
      break;
    }
    case StopMode::SolutionError: {
      if (!meta.x_star)
        throw MissingMetadata("SolutionError stopping needs a reference solution");
      if (meta.x_star->size() != a.cols())
        throw DimensionMismatch("meta.x_star must have length n");
      e.x_star = &*meta.x_star;
      e.x_star_sq = e.x_star->squaredNorm();
      break;
    }
    case StopMode::GradientRelative:
      e.grad_ref = (a.values().transpose() * b).norm();
      break;
  }
  return e;
}

void validate_inputs(const DenseMatrix& a, const Vector& b, const Vector& x0) {
  if (b.size() != a.rows()) throw DimensionMismatch("b must have length m");
  if (x0.size() != a.cols()) throw DimensionMismatch("x0 must have length n");
  if (!b.allFinite() || !x0.allFinite())
    throw NonFiniteValue("b and x0 must be finite");
}

template <class StepFn>
SolveReport run_driver(const DenseMatrix& a, const Vector& b, const Vector& x0,
                       const StopRule& stop, const ProblemMeta& meta, const SolveHooks* hooks,
                       StepFn&& step) {
  validate_inputs(a, b, x0);
  validate_stop_rule(stop);
  column_norms_sq(a);  // enforce the nonzero-columns assumption up front
  const StopEval eval = make_stop_eval(stop, a, b, meta);
  const std::int64_t cadence =
      stop.check_every > 0 ? stop.check_every
                           : (stop.mode == StopMode::GradientRelative ? a.cols() : 1);

  SolverState s;
  s.x = x0;
  s.r = b - a.values() * x0;

  SolveReport rep;
  const bool observing = hooks && hooks->on_step;
  const std::int64_t trace_every = hooks ? hooks->trace_every : 0;
  Termination term = Termination::MaxIters;
  double final_metric = std::numeric_limits<double>::quiet_NaN();

  const auto t0 = std::chrono::steady_clock::now();
  while (s.k < stop.max_iters) {
    const StepInfo info = step(s);
    if (observing) hooks->on_step(s, info);
    if (s.k % cadence == 0 || s.k == stop.max_iters) {
      const auto res = eval.check(s, a);
      final_metric = res.metric;
      if (trace_every > 0 && s.k % trace_every == 0) rep.trace.emplace_back(s.k, res.metric);
      if (res.converged) {
        term = Termination::Converged;
        break;
      }
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  rep.x_final = std::move(s.x);
  rep.r_final = std::move(s.r);
  rep.iterations = s.k;
  rep.updates_applied = s.updates_applied;
  rep.skips = s.skips;
  rep.termination = term;
  rep.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.final_metric = final_metric;
  return rep;
}

/// Uniform draw from {1..n} \ {excl}.
Index draw_excluding(Rng& rng, Index n, Index excl) {
  Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1))) + 1;
  if (j >= excl) ++j;
  return j;
}

/// Uniform draw from {1..n} \ {a, b}, a != b.
Index draw_excluding2(Rng& rng, Index n, Index a, Index b) {
  Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 2))) + 1;
  const Index lo = std::min(a, b), hi = std::max(a, b);
  if (j >= lo) ++j;
  if (j >= hi) ++j;
  return j;
}

}  // namespace

StopDecision evaluate_stop(const SolverState& state, const StopRule& stop, const DenseMatrix& a,
                           const Vector& b, const ProblemMeta& meta) {
  validate_stop_rule(stop);
  const StopEval eval = make_stop_eval(stop, a, b, meta);
  return eval.check(state, a).converged ? StopDecision::Converged : StopDecision::Continue;
}

SolveReport solve_cd(const DenseMatrix& a, const Vector& b, const Vector& x0,
                     const StopRule& stop, const ProblemMeta& meta, const SolveHooks* hooks) {
  const Index n = a.cols();
  return run_driver(a, b, x0, stop, meta, hooks,
                    [&a, n](SolverState& s) { return cd_step(s, a, (s.k % n) + 1); });
}

SolveReport solve_rcd(const DenseMatrix& a, const Vector& b, const Vector& x0,
                      const StopRule& stop, const ProblemMeta& meta, Rng& rng,
                      const SolveHooks* hooks) {
  const Index n = a.cols();
  return run_driver(a, b, x0, stop, meta, hooks, [&a, n, &rng](SolverState& s) {
    return cd_step(s, a, static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))) + 1);
  });
}

SolveReport solve_gso(const DenseMatrix& a, const Vector& b, const Vector& x0,
                      const StopRule& stop, const ObliqueConfig& cfg, const ProblemMeta& meta,
                      const SolveHooks* hooks) {
  const Index n = a.cols();
  if (n < 2) throw DimensionMismatch("solve_gso requires n >= 2");
  return run_driver(a, b, x0, stop, meta, hooks, [&a, n, &cfg](SolverState& s) {
    if (s.k == 0) return cd_step(s, a, 1);
    return oblique_step(s, a, s.i_prev, (s.k % n) + 1, cfg);
  });
}

SolveReport solve_rgso(const DenseMatrix& a, const Vector& b, const Vector& x0,
                       const StopRule& stop, const ObliqueConfig& cfg, const ProblemMeta& meta,
                       Rng& rng, const SolveHooks* hooks) {
  const Index n = a.cols();
  return run_driver(a, b, x0, stop, meta, hooks, [&a, n, &cfg, &rng](SolverState& s) {
    if (n == 1) return cd_step(s, a, 1);
    if (s.k == 0)
      return cd_step(s, a, static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))) + 1);
    if (n == 2) return oblique_step(s, a, s.i_prev, 3 - s.i_prev, cfg);
    if (s.k == 1) return oblique_step(s, a, s.i_prev, draw_excluding(rng, n, s.i_prev), cfg);
    return oblique_step(s, a, s.i_prev, draw_excluding2(rng, n, s.i_prev, s.i_prev2), cfg);
  });
}

}  // namespace lsq

// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line. Run with no arguments for all criteria or pass a list of
// criterion numbers (useful for splitting slow benchmark reproductions).

#include "lsq/bench.hpp"
#include "lsq/metrics.hpp"
#include "lsq/oracle.hpp"
#include "lsq/problems.hpp"
#include "lsq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using lsq::DenseMatrix;
using lsq::Index;
using lsq::Matrix;
using lsq::Method;
using lsq::ProblemMeta;
using lsq::SolveHooks;
using lsq::SolverState;
using lsq::StepInfo;
using lsq::StopMode;
using lsq::StopRule;
using lsq::Vector;

namespace {

struct Outcome {
  bool pass = true;
  std::string details;
};

struct Failure {
  std::ostringstream msg;
  bool any = false;
};

template <class T>
void expect(Failure& f, bool ok, const T& what) {
  if (ok) return;
  if (f.any) f.msg << "; ";
  f.msg << what;
  f.any = true;
}

StopRule solution_error_rule(std::int64_t max_iters) {
  StopRule stop;
  stop.mode = StopMode::SolutionError;
  stop.threshold = 0.5e-6;
  stop.max_iters = max_iters;
  return stop;
}

// ---------------------------------------------------------------------------
// 1. cyclic CD iteration counts on the three demo systems
// ---------------------------------------------------------------------------
Outcome criterion1() {
  const std::int64_t targets[3] = {650259, 137317, 3053153};
  const lsq::Fixture which[3] = {lsq::Fixture::SquareConsistent, lsq::Fixture::TallConsistent,
                                 lsq::Fixture::TallInconsistent};
  Failure f;
  std::ostringstream got;
  for (int i = 0; i < 3; ++i) {
    const auto p = lsq::fixture(which[i]);
    const auto rep =
        lsq::solve_cd(p.a, p.b, Vector::Zero(2), solution_error_rule(4000000), p.meta());
    got << (i ? ", " : "") << rep.iterations;
    expect(f, rep.termination == lsq::Termination::Converged,
           "fixture " + std::to_string(i) + " did not converge");
    const double relerr =
        std::abs(static_cast<double>(rep.iterations - targets[i])) / targets[i];
    expect(f, relerr <= 0.01,
           "fixture " + std::to_string(i) + ": " + std::to_string(rep.iterations) +
               " vs target " + std::to_string(targets[i]));
  }
  return {!f.any, f.any ? f.msg.str() : "iterations " + got.str() +
                              " vs 650259, 137317, 3053153 (+-1%)"};
}

// ---------------------------------------------------------------------------
// 2. GSO solves each demo system with two applied updates
// ---------------------------------------------------------------------------
Outcome criterion2() {
  Failure f;
  for (auto which : {lsq::Fixture::SquareConsistent, lsq::Fixture::TallConsistent,
                     lsq::Fixture::TallInconsistent}) {
    const auto p = lsq::fixture(which);
    const auto rep = lsq::solve_gso(p.a, p.b, Vector::Zero(2), solution_error_rule(500000),
                                    lsq::ObliqueConfig{}, p.meta());
    expect(f, rep.termination == lsq::Termination::Converged, "no convergence");
    expect(f, rep.updates_applied == 2,
           "updates_applied = " + std::to_string(rep.updates_applied));
    expect(f, rep.final_metric <= 0.5e-6, "solution error above threshold");
    expect(f, std::abs(rep.x_final[0] - 1.0) <= 1e-10 &&
                  std::abs(rep.x_final[1] - 1.0) <= 1e-10,
           "x not (1,1) to 1e-10");
  }
  return {!f.any, f.any ? f.msg.str() : "all three systems solved with 2 updates"};
}

// ---------------------------------------------------------------------------
// 3. step invariants along production trajectories
// ---------------------------------------------------------------------------
struct InvariantCounters {
  long applied_steps = 0;
  long oblique_steps = 0;
  long recurrence_checks = 0;
};

void run_invariant_checks(const lsq::LeastSquaresProblem& p, Method method,
                          std::uint64_t seed, Failure& f, InvariantCounters& counters) {
  const Matrix& av = p.a.values();
  const Vector& x_tilde = *p.x_planted;
  const double r0_norm = p.b.norm();
  const double frob = std::sqrt(p.a.frob_norm_sq());
  double max_col_norm = 0.0;
  for (Index j = 1; j <= p.a.cols(); ++j)
    max_col_norm = std::max(max_col_norm, std::sqrt(p.a.col_norm_sq(j)));

  Vector x_prev = Vector::Zero(p.a.cols());
  double delta_prev = (av * (x_prev - x_tilde)).squaredNorm();
  const double delta0 = delta_prev;

  SolveHooks hooks;
  hooks.on_step = [&](const SolverState& s, const StepInfo& info) {
    const double delta_now = (av * (s.x - x_tilde)).squaredNorm();
    if (info.applied) {
      ++counters.applied_steps;
      // one-index orthogonality on the stepped column
      const double next_dot = std::abs(av.col(info.i_next - 1).dot(s.r));
      const double col_norm = std::sqrt(p.a.col_norm_sq(info.i_next));
      expect(f, next_dot <= 1e-10 * col_norm * r0_norm, "one-index orthogonality");
      if (info.i_prev != 0) {
        ++counters.oblique_steps;
        // two-index orthogonality after an applied oblique step
        const double prev_dot = std::abs(av.col(info.i_prev - 1).dot(s.r));
        expect(f, next_dot <= 1e-10 * max_col_norm * r0_norm &&
                      prev_dot <= 1e-10 * max_col_norm * r0_norm,
               "two-index orthogonality");
        // dominance: the oblique decrease never falls below the coordinate one
        const double d_oblique = info.r_dot * info.r_dot / info.g;
        const double d_cd = info.r_dot * info.r_dot / p.a.col_norm_sq(info.i_next);
        expect(f, d_oblique >= d_cd * (1.0 - 1e-12), "per-step dominance");
        const double cols_dot = lsq::dot_columns(p.a, info.i_prev, info.i_next);
        if (std::abs(cols_dot) > 1e-8 * max_col_norm * max_col_norm &&
            info.r_dot * info.r_dot > 1e-20 * delta0)
          expect(f, d_oblique > d_cd, "dominance strictness");
      }
      // exact decrease identity
      const double predicted = info.r_dot * info.r_dot / info.g;
      const double measured = delta_prev - delta_now;
      expect(f, std::abs(measured - predicted) <= 1e-8 * (delta_prev + predicted),
             "decrease identity");
    } else {
      expect(f, s.x == x_prev, "skip must not move the iterate");
    }
    // monotone error seminorm
    expect(f, delta_now <= delta_prev + 1e-12 * delta0, "monotonicity");
    // residual recurrence on a sparse cadence
    if (info.k % 25 == 0) {
      ++counters.recurrence_checks;
      const double drift = (s.r - (p.b - av * s.x)).norm();
      expect(f, drift <= 1e-10 * (p.b.norm() + frob * s.x.norm()), "residual recurrence");
    }
    x_prev = s.x;
    delta_prev = delta_now;
  };

  StopRule stop;
  stop.max_iters = 400;
  lsq::Rng rng(seed);
  const Vector x0 = Vector::Zero(p.a.cols());
  switch (method) {
    case Method::CD: lsq::solve_cd(p.a, p.b, x0, stop, p.meta(), &hooks); break;
    case Method::RCD: lsq::solve_rcd(p.a, p.b, x0, stop, p.meta(), rng, &hooks); break;
    case Method::GSO:
      lsq::solve_gso(p.a, p.b, x0, stop, lsq::ObliqueConfig{}, p.meta(), &hooks);
      break;
    case Method::RGSO:
      lsq::solve_rgso(p.a, p.b, x0, stop, lsq::ObliqueConfig{}, p.meta(), rng, &hooks);
      break;
  }
}

Outcome criterion3() {
  Failure f;
  InvariantCounters counters;
  lsq::Rng gen(0xACCE55);
  int built = 0;
  std::uint64_t seed = 0;
  while (built < 200) {
    ++seed;
    const Index n = 2 + static_cast<Index>(gen.below(9));          // 2..10
    const Index m = n + static_cast<Index>(gen.below(51 - n));     // n..50
    const bool want_inconsistent = built % 2 == 1 && m > n;
    lsq::LeastSquaresProblem p = lsq::make_problem(
        {m, n, 0.0, !want_inconsistent, lsq::derive_seed(0xACCE55, seed, 0)});
    ++built;
    for (Method method : {Method::CD, Method::RCD, Method::GSO, Method::RGSO})
      run_invariant_checks(p, method, seed * 4 + method_tag(method), f, counters);
    if (f.any) break;  // first violation is enough detail
  }
  for (auto which : {lsq::Fixture::SquareConsistent, lsq::Fixture::TallConsistent,
                     lsq::Fixture::TallInconsistent}) {
    const auto p = lsq::fixture(which);
    for (Method method : {Method::CD, Method::RCD, Method::GSO, Method::RGSO})
      run_invariant_checks(p, method, 17 + method_tag(method), f, counters);
  }
  std::ostringstream ok;
  ok << "200 problems + 3 fixtures x 4 methods: " << counters.applied_steps
     << " applied steps (" << counters.oblique_steps << " oblique), "
     << counters.recurrence_checks << " recurrence checks";
  return {!f.any, f.any ? f.msg.str() : ok.str()};
}

// ---------------------------------------------------------------------------
// 4. GSO/RGSO agree with the direct solver on full-rank systems
// ---------------------------------------------------------------------------
Outcome criterion4() {
  Failure f;
  lsq::Rng gen(0x04AC1E);
  StopRule stop;
  stop.mode = StopMode::GradientRelative;
  stop.threshold = 1e-10;
  stop.max_iters = 500000;
  for (int rep = 0; rep < 50; ++rep) {
    const Index n = 2 + static_cast<Index>(gen.below(4));       // 2..5
    const Index m = n + 1 + static_cast<Index>(gen.below(20 - n));  // n+1..20
    const bool consistent = rep % 2 == 0;
    const auto p = lsq::make_problem(
        {m, n, 0.0, consistent, lsq::derive_seed(0x04AC1E, rep, 1)});
    const auto spectral = lsq::spectral_summary(p.a);
    if (spectral.rank < n) continue;  // full column rank only (never at this scale)

    const Vector x_oracle = lsq::direct_lsq(p.a, p.b);
    const double grad_ref = (p.a.values().transpose() * p.b).norm();

    lsq::Rng rng(lsq::derive_seed(0x04AC1E, rep, 2));
    const auto gso = lsq::solve_gso(p.a, p.b, Vector::Zero(n), stop, lsq::ObliqueConfig{},
                                    p.meta());
    const auto rgso = lsq::solve_rgso(p.a, p.b, Vector::Zero(n), stop, lsq::ObliqueConfig{},
                                      p.meta(), rng);
    for (const auto* r : {&gso, &rgso}) {
      expect(f, r->termination == lsq::Termination::Converged, "no convergence");
      const Vector true_residual = p.b - p.a.values() * r->x_final;
      const double grad = (p.a.values().transpose() * true_residual).norm();
      expect(f, grad <= 1e-8 * grad_ref, "gradient above 1e-8 * ||A^T b||");
      const double dist = (p.a.values() * (r->x_final - x_oracle)).norm();
      expect(f, dist <= 1e-6 * p.b.norm(), "iterate far from the direct solution");
    }
  }
  return {!f.any, f.any ? f.msg.str() : "50 systems, both methods within tolerance"};
}

// ---------------------------------------------------------------------------
// 5. sampled RGSO contraction vs the theoretical factor
// ---------------------------------------------------------------------------
Outcome criterion5() {
  const auto p = lsq::make_problem({100, 10, 0.0, true, 20250808});
  const auto bounds = lsq::rate_bounds(p.a, lsq::spectral_summary(p.a));
  if (!bounds.rgso_factor) return {false, "contraction factor undefined"};
  const double factor = *bounds.rgso_factor;

  const Matrix& av = p.a.values();
  const Vector& x_tilde = *p.x_planted;
  std::vector<double> ratios;
  ratios.reserve(4000);

  for (std::uint64_t traj = 0; traj < 50 && ratios.size() < 1000; ++traj) {
    Vector x_prev = Vector::Zero(10);
    double delta_prev = (av * (x_prev - x_tilde)).squaredNorm();
    SolveHooks hooks;
    hooks.on_step = [&](const SolverState& s, const StepInfo& info) {
      const double delta_now = (av * (s.x - x_tilde)).squaredNorm();
      // steps with two excluded indices, i.e. the third step onward
      if (info.applied && info.k >= 3 && delta_prev > 0.0)
        ratios.push_back(delta_now / delta_prev);
      x_prev = s.x;
      delta_prev = delta_now;
    };
    lsq::Rng rng(lsq::derive_seed(555, traj, 0));
    lsq::solve_rgso(p.a, p.b, Vector::Zero(10), StopRule{}, lsq::ObliqueConfig{}, p.meta(),
                    rng, &hooks);
  }

  const double n_samples = static_cast<double>(ratios.size());
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= n_samples;
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= (n_samples - 1.0);
  const double se = std::sqrt(var / n_samples);

  Failure f;
  expect(f, ratios.size() >= 1000, "not enough samples");
  expect(f, mean <= factor + 3.0 * se, "mean ratio above the bound");
  std::ostringstream ok;
  ok << "mean ratio " << mean << " <= factor " << factor << " + 3*SE (" << 3.0 * se
     << "), n = " << ratios.size();
  return {!f.any, f.any ? f.msg.str() : ok.str()};
}

// ---------------------------------------------------------------------------
// 6. 1000x50 consistent benchmark medians
// ---------------------------------------------------------------------------
Outcome criterion6() {
  lsq::TableOptions options;
  options.specs = {{1000, 50, 0.0, true}};
  options.repeats = 50;
  options.master_seed = 42;
  options.threads = 1;
  const auto result = lsq::run_table(options);

  Failure f;
  std::ostringstream got;
  const struct {
    Method method;
    double target;
    double band;
  } expectations[] = {{Method::CD, 73004, 0.15},
                      {Method::RCD, 1733, 0.30},
                      {Method::GSO, 11110, 0.15},
                      {Method::RGSO, 778, 0.30}};
  for (const auto& e : expectations) {
    for (const auto& row : result.rows) {
      if (row.method != e.method) continue;
      if (!row.median_it) {
        expect(f, false, method_name(e.method) + " is DNF");
        continue;
      }
      got << method_name(e.method) << "=" << *row.median_it << " ";
      const double rel = std::abs(static_cast<double>(*row.median_it) - e.target) / e.target;
      expect(f, rel <= e.band,
             method_name(e.method) + " median " + std::to_string(*row.median_it) +
                 " outside " + std::to_string(e.target) + " +-" +
                 std::to_string(static_cast<int>(e.band * 100)) + "%");
    }
  }
  const auto& sp = result.speedups.at(0);
  if (sp.speedup1) {
    std::ostringstream s;
    s << "speedup1=" << *sp.speedup1;
    got << s.str();
  }
  expect(f, sp.speedup1.has_value() && *sp.speedup1 >= 3.0, "speedup1 below 3");
  return {!f.any, f.any ? f.msg.str() : got.str()};
}

// ---------------------------------------------------------------------------
// 7. 3000x50 near-correlated columns: CD stalls, RGSO stays fast
// ---------------------------------------------------------------------------
Outcome criterion7() {
  Failure f;
  std::ostringstream got;
  {
    lsq::TableOptions options;
    options.specs = {{3000, 50, 0.45, true}};
    options.methods = {Method::CD};
    options.repeats = 50;
    options.master_seed = 43;
    options.threads = 1;
    const auto result = lsq::run_table(options);
    expect(f, !result.rows.at(0).median_it.has_value(), "CD at c=0.45 should be DNF");
    got << "CD@0.45=" << (result.rows.at(0).median_it ? "converged" : "DNF") << " ";
  }
  {
    lsq::TableOptions options;
    options.specs = {{3000, 50, 0.90, true}};
    options.methods = {Method::RCD, Method::RGSO};
    options.repeats = 50;
    options.master_seed = 44;
    options.threads = 1;
    const auto result = lsq::run_table(options);
    std::optional<std::int64_t> it_rcd, it_rgso;
    for (const auto& row : result.rows) {
      if (row.method == Method::RCD) it_rcd = row.median_it;
      if (row.method == Method::RGSO) it_rgso = row.median_it;
    }
    expect(f, it_rgso.has_value() && *it_rgso >= 250 && *it_rgso <= 650,
           "RGSO median outside [250, 650]");
    expect(f, it_rcd.has_value() && *it_rcd >= 100000, "RCD median below 100000");
    const auto& sp = result.speedups.at(0);
    expect(f, sp.speedup2.has_value() && *sp.speedup2 >= 50.0, "speedup2 below 50");
    if (it_rcd) got << "RCD@0.9=" << *it_rcd << " ";
    if (it_rgso) got << "RGSO@0.9=" << *it_rgso << " ";
    if (sp.speedup2) got << "speedup2=" << *sp.speedup2;
  }
  return {!f.any, f.any ? f.msg.str() : got.str()};
}

// ---------------------------------------------------------------------------
// 8. kappa_F^2 grows strictly with c
// ---------------------------------------------------------------------------
Outcome criterion8() {
  lsq::SweepOptions options;
  options.m = 3000;
  options.n = 50;
  options.c_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  options.repeats = 10;
  options.master_seed = 45;
  options.it_cap = 2000;  // the solver columns are irrelevant to this criterion
  options.threads = 1;
  const auto rows = lsq::run_sweep_c(options);

  Failure f;
  std::ostringstream got;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    got << (i ? " " : "") << rows[i].median_kappa_f_sq;
    if (i > 0)
      expect(f, rows[i].median_kappa_f_sq > rows[i - 1].median_kappa_f_sq,
             "not strictly increasing at c = " + std::to_string(rows[i].c));
  }
  return {!f.any, f.any ? f.msg.str() : "medians: " + got.str()};
}

// ---------------------------------------------------------------------------
// 9. bitwise determinism of benchmark iteration columns and solver reports
// ---------------------------------------------------------------------------
std::vector<std::string> it_column(const lsq::TableResult& result) {
  std::ostringstream out;
  lsq::write_table_csv(result, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::string> its;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (int i = 0; i < 7 && std::getline(cells, cell, ','); ++i) {
    }
    its.push_back(cell);  // median_it column
  }
  return its;
}

Outcome criterion9() {
  Failure f;
  lsq::TableOptions options;
  options.specs = {{200, 20, 0.0, true}, {150, 10, 0.3, false}};
  options.repeats = 5;
  options.master_seed = 12345;
  options.threads = 1;
  const auto r1 = lsq::run_table(options);
  options.threads = 4;  // schedule independence
  const auto r2 = lsq::run_table(options);
  expect(f, it_column(r1) == it_column(r2), "iteration columns differ between runs");

  const auto p = lsq::make_problem({80, 8, 0.0, false, 999});
  lsq::Rng a1(7), a2(7);
  const auto rcd1 = lsq::solve_rcd(p.a, p.b, Vector::Zero(8), StopRule{}, p.meta(), a1);
  const auto rcd2 = lsq::solve_rcd(p.a, p.b, Vector::Zero(8), StopRule{}, p.meta(), a2);
  expect(f, rcd1.iterations == rcd2.iterations && rcd1.x_final == rcd2.x_final &&
                rcd1.r_final == rcd2.r_final,
         "RCD reports differ for equal seeds");
  lsq::Rng b1(8), b2(8);
  const auto rg1 = lsq::solve_rgso(p.a, p.b, Vector::Zero(8), StopRule{},
                                   lsq::ObliqueConfig{}, p.meta(), b1);
  const auto rg2 = lsq::solve_rgso(p.a, p.b, Vector::Zero(8), StopRule{},
                                   lsq::ObliqueConfig{}, p.meta(), b2);
  expect(f, rg1.iterations == rg2.iterations && rg1.x_final == rg2.x_final &&
                rg1.r_final == rg2.r_final && rg1.skips == rg2.skips,
         "RGSO reports differ for equal seeds");
  return {!f.any, f.any ? f.msg.str() : "IT columns and seeded reports are bit-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3,
                                               criterion4, criterion5, criterion6,
                                               criterion7, criterion8, criterion9};
  const char* names[] = {
      "demo-system CD iteration counts",
      "GSO two-update solve",
      "step invariants",
      "direct-solver agreement",
      "RGSO statistical contraction",
      "1000x50 benchmark medians",
      "3000x50 near-correlation behavior",
      "kappa_F^2 monotone in c",
      "determinism",
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= 9; ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > 9) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    Outcome outcome;
    try {
      outcome = criteria[id - 1]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << names[id - 1]
              << "): " << outcome.details << "\n";
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

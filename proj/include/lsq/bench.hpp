#pragma once

#include "lsq/problems.hpp"
#include "lsq/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lsq {

enum class Method { CD, RCD, GSO, RGSO };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

/// Frozen tag used in child-seed derivation (solver stream =
/// derive_seed(problem_seed, method_tag, 1)).
std::uint64_t method_tag(Method m);

/// One benchmark cell: m x n entries uniform on [c,1), consistent or planted
/// inconsistent.
struct TableSpec {
  Index m = 0;
  Index n = 0;
  double c = 0.0;
  bool consistent = true;
};

/// Median row for one (spec, method). Absent medians mean DNF: the median run
/// hit the iteration cap.
struct BenchRow {
  TableSpec spec;
  Method method = Method::CD;
  int repeats = 0;
  std::optional<std::int64_t> median_it;
  std::optional<double> median_cpu_seconds;
};

/// CPU-time ratios per spec: speedup1 = CPU(CD)/CPU(GSO),
/// speedup2 = CPU(RCD)/CPU(RGSO). `ran*` records whether both methods were
/// requested; a ran speedup with an absent value is a DNF propagation.
struct SpeedupRow {
  TableSpec spec;
  bool ran1 = false;
  bool ran2 = false;
  std::optional<double> speedup1;
  std::optional<double> speedup2;
};

struct TableOptions {
  std::vector<TableSpec> specs;
  std::vector<Method> methods = {Method::CD, Method::RCD, Method::GSO, Method::RGSO};
  int repeats = 50;
  std::uint64_t master_seed = 1;
  StopRule stop;  // defaults: RRE < 0.5e-6, cap 500000
  ObliqueConfig oblique;
  int threads = 1;
};

struct TableResult {
  std::vector<BenchRow> rows;        // spec-major, methods in requested order
  std::vector<SpeedupRow> speedups;  // one per spec
};

/// Runs every (spec, repeat) cell on a fresh problem seeded by
/// derive_seed(master_seed, spec_index, repeat_index); all requested methods
/// share the cell's problem instance. Iteration medians are deterministic
/// functions of master_seed; CPU medians are wall-clock around the solver
/// loop only. Repeats may run on several threads without changing any
/// iteration count.
TableResult run_table(const TableOptions& options);

/// CSV schema:
///   m,n,c,consistent,method,repeats,median_it,median_cpu_seconds,speedup1,speedup2
/// One row per (spec, method) plus one "speedup" row per spec; DNF is spelled
/// literally, cells for methods that were not run stay empty.
void write_table_csv(const TableResult& result, std::ostream& out);

struct SweepOptions {
  Index m = 3000;
  Index n = 50;
  std::vector<double> c_grid;
  int repeats = 10;
  std::uint64_t master_seed = 1;
  std::int64_t it_cap = 800000;
  double threshold = 0.5e-6;
  int threads = 1;
};

struct SweepRow {
  double c = 0.0;
  double median_kappa_f_sq = 0.0;
  std::optional<std::int64_t> median_it_cd;
  std::optional<std::int64_t> median_it_rcd;
};

/// For each c: consistent problems, per-problem kappa_F^2 from the spectral
/// summary, CD and RCD run under RRE stopping capped at it_cap.
std::vector<SweepRow> run_sweep_c(const SweepOptions& options);

/// CSV schema: c,median_kappa_f_sq,median_it_cd,median_it_rcd
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace lsq

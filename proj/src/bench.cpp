#include "lsq/bench.hpp"

#include "lsq/metrics.hpp"
#include "lsq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace lsq {

std::string method_name(Method m) {
  switch (m) {
    case Method::CD: return "CD";
    case Method::RCD: return "RCD";
    case Method::GSO: return "GSO";
    case Method::RGSO: return "RGSO";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "cd") return Method::CD;
  if (s == "rcd") return Method::RCD;
  if (s == "gso") return Method::GSO;
  if (s == "rgso") return Method::RGSO;
  return std::nullopt;
}

std::uint64_t method_tag(Method m) {
  switch (m) {
    case Method::CD: return 1;
    case Method::RCD: return 2;
    case Method::GSO: return 3;
    case Method::RGSO: return 4;
  }
  return 0;
}

namespace {

struct CellResult {
  std::int64_t it = 0;
  bool converged = false;
  double cpu = 0.0;
};

CellResult run_method(Method method, const LeastSquaresProblem& problem,
                      const StopRule& stop, const ObliqueConfig& oblique,
                      std::uint64_t solver_seed) {
  const Vector x0 = Vector::Zero(problem.a.cols());
  const ProblemMeta meta = problem.meta();
  SolveReport rep;
  Rng rng(solver_seed);
  switch (method) {
    case Method::CD: rep = solve_cd(problem.a, problem.b, x0, stop, meta); break;
    case Method::RCD: rep = solve_rcd(problem.a, problem.b, x0, stop, meta, rng); break;
    case Method::GSO: rep = solve_gso(problem.a, problem.b, x0, stop, oblique, meta); break;
    case Method::RGSO:
      rep = solve_rgso(problem.a, problem.b, x0, stop, oblique, meta, rng);
      break;
  }
  return {rep.iterations, rep.termination == Termination::Converged, rep.elapsed_seconds};
}

/// Lower median of iteration counts; absent (DNF) when the median run did not
/// converge. Capped runs sort after converged runs of equal count.
std::optional<std::int64_t> median_it(std::vector<CellResult> cells) {
  std::sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) {
    if (a.it != b.it) return a.it < b.it;
    return a.converged && !b.converged;
  });
  const CellResult& mid = cells[(cells.size() - 1) / 2];
  if (!mid.converged) return std::nullopt;
  return mid.it;
}

double median_cpu(std::vector<CellResult> cells) {
  std::vector<double> cpu(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cpu[i] = cells[i].cpu;
  std::sort(cpu.begin(), cpu.end());
  return cpu[(cpu.size() - 1) / 2];
}

double median_double(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Runs job(0..count-1) on up to `threads` workers; results land wherever the
/// job writes them, so ordering never depends on the schedule.
template <class Job>
void parallel_for(std::int64_t count, int threads, Job&& job) {
  const int workers = std::max(1, threads);
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < std::min<std::int64_t>(workers, count); ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string fmt_cpu(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_ratio(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt_c(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

TableResult run_table(const TableOptions& options) {
  if (options.repeats < 1) throw Error("repeats must be >= 1");
  if (options.specs.empty()) throw Error("no benchmark specs given");
  if (options.methods.empty()) throw Error("no methods requested");

  const std::size_t n_specs = options.specs.size();
  const std::size_t n_methods = options.methods.size();
  const std::size_t repeats = static_cast<std::size_t>(options.repeats);
  std::vector<CellResult> cells(n_specs * repeats * n_methods);

  parallel_for(static_cast<std::int64_t>(n_specs * repeats), options.threads,
               [&](std::int64_t flat) {
                 const std::size_t spec_idx = static_cast<std::size_t>(flat) / repeats;
                 const std::size_t rep = static_cast<std::size_t>(flat) % repeats;
                 const TableSpec& spec = options.specs[spec_idx];
                 const std::uint64_t child = derive_seed(options.master_seed, spec_idx, rep);
                 const LeastSquaresProblem problem =
                     make_problem({spec.m, spec.n, spec.c, spec.consistent, child});
                 for (std::size_t mi = 0; mi < n_methods; ++mi) {
                   const Method method = options.methods[mi];
                   cells[(spec_idx * repeats + rep) * n_methods + mi] =
                       run_method(method, problem, options.stop, options.oblique,
                                  derive_seed(child, method_tag(method), 1));
                 }
               });

  TableResult result;
  for (std::size_t spec_idx = 0; spec_idx < n_specs; ++spec_idx) {
    std::optional<double> cpu_cd, cpu_rcd, cpu_gso, cpu_rgso;
    bool ran_cd = false, ran_rcd = false, ran_gso = false, ran_rgso = false;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      std::vector<CellResult> method_cells(repeats);
      for (std::size_t rep = 0; rep < repeats; ++rep)
        method_cells[rep] = cells[(spec_idx * repeats + rep) * n_methods + mi];
      BenchRow row;
      row.spec = options.specs[spec_idx];
      row.method = options.methods[mi];
      row.repeats = options.repeats;
      row.median_it = median_it(method_cells);
      if (row.median_it) row.median_cpu_seconds = median_cpu(method_cells);
      result.rows.push_back(row);

      switch (row.method) {
        case Method::CD: ran_cd = true; cpu_cd = row.median_cpu_seconds; break;
        case Method::RCD: ran_rcd = true; cpu_rcd = row.median_cpu_seconds; break;
        case Method::GSO: ran_gso = true; cpu_gso = row.median_cpu_seconds; break;
        case Method::RGSO: ran_rgso = true; cpu_rgso = row.median_cpu_seconds; break;
      }
    }
    SpeedupRow sp;
    sp.spec = options.specs[spec_idx];
    sp.ran1 = ran_cd && ran_gso;
    sp.ran2 = ran_rcd && ran_rgso;
    if (cpu_cd && cpu_gso && *cpu_gso > 0.0) sp.speedup1 = *cpu_cd / *cpu_gso;
    if (cpu_rcd && cpu_rgso && *cpu_rgso > 0.0) sp.speedup2 = *cpu_rcd / *cpu_rgso;
    result.speedups.push_back(sp);
  }
  return result;
}

void write_table_csv(const TableResult& result, std::ostream& out) {
  out << "m,n,c,consistent,method,repeats,median_it,median_cpu_seconds,speedup1,speedup2\n";
  std::size_t spec_idx = 0;
  std::size_t rows_in_spec = result.speedups.empty()
                                 ? result.rows.size()
                                 : result.rows.size() / result.speedups.size();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const BenchRow& row = result.rows[i];
    out << row.spec.m << "," << row.spec.n << "," << fmt_c(row.spec.c) << ","
        << (row.spec.consistent ? 1 : 0) << "," << method_name(row.method) << ","
        << row.repeats << ",";
    out << (row.median_it ? std::to_string(*row.median_it) : "DNF") << ",";
    out << (row.median_cpu_seconds ? fmt_cpu(*row.median_cpu_seconds) : "DNF");
    out << ",,\n";
    if ((i + 1) % rows_in_spec == 0 && spec_idx < result.speedups.size()) {
      const SpeedupRow& sp = result.speedups[spec_idx++];
      out << sp.spec.m << "," << sp.spec.n << "," << fmt_c(sp.spec.c) << ","
          << (sp.spec.consistent ? 1 : 0) << ",speedup,,,,";
      out << (sp.ran1 ? (sp.speedup1 ? fmt_ratio(*sp.speedup1) : "DNF") : "") << ",";
      out << (sp.ran2 ? (sp.speedup2 ? fmt_ratio(*sp.speedup2) : "DNF") : "") << "\n";
    }
  }
}

std::vector<SweepRow> run_sweep_c(const SweepOptions& options) {
  if (options.repeats < 1) throw Error("repeats must be >= 1");
  if (options.c_grid.empty()) throw Error("empty c grid");
  for (std::size_t i = 1; i < options.c_grid.size(); ++i)
    if (!(options.c_grid[i] > options.c_grid[i - 1]))
      throw BadInterval("c grid must be strictly increasing");

  StopRule stop;
  stop.mode = StopMode::ResidualRelativeError;
  stop.threshold = options.threshold;
  stop.max_iters = options.it_cap;

  const std::size_t n_c = options.c_grid.size();
  const std::size_t repeats = static_cast<std::size_t>(options.repeats);
  struct SweepCell {
    double kappa = 0.0;
    CellResult cd, rcd;
  };
  std::vector<SweepCell> cells(n_c * repeats);

  parallel_for(static_cast<std::int64_t>(n_c * repeats), options.threads,
               [&](std::int64_t flat) {
                 const std::size_t ci = static_cast<std::size_t>(flat) / repeats;
                 const std::size_t rep = static_cast<std::size_t>(flat) % repeats;
                 const std::uint64_t child = derive_seed(options.master_seed, ci, rep);
                 const LeastSquaresProblem problem =
                     make_problem({options.m, options.n, options.c_grid[ci], true, child});
                 SweepCell& cell = cells[ci * repeats + rep];
                 cell.kappa =
                     rate_bounds(problem.a, spectral_summary(problem.a)).kappa_f_sq;
                 cell.cd = run_method(Method::CD, problem, stop, ObliqueConfig{},
                                      derive_seed(child, method_tag(Method::CD), 1));
                 cell.rcd = run_method(Method::RCD, problem, stop, ObliqueConfig{},
                                       derive_seed(child, method_tag(Method::RCD), 1));
               });

  std::vector<SweepRow> rows(n_c);
  for (std::size_t ci = 0; ci < n_c; ++ci) {
    std::vector<double> kappas(repeats);
    std::vector<CellResult> cd(repeats), rcd(repeats);
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      kappas[rep] = cells[ci * repeats + rep].kappa;
      cd[rep] = cells[ci * repeats + rep].cd;
      rcd[rep] = cells[ci * repeats + rep].rcd;
    }
    rows[ci].c = options.c_grid[ci];
    rows[ci].median_kappa_f_sq = median_double(std::move(kappas));
    rows[ci].median_it_cd = median_it(std::move(cd));
    rows[ci].median_it_rcd = median_it(std::move(rcd));
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "c,median_kappa_f_sq,median_it_cd,median_it_rcd\n";
  char buf[64];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", row.median_kappa_f_sq);
    out << fmt_c(row.c) << "," << buf << ","
        << (row.median_it_cd ? std::to_string(*row.median_it_cd) : "DNF") << ","
        << (row.median_it_rcd ? std::to_string(*row.median_it_rcd) : "DNF") << "\n";
  }
}

}  // namespace lsq

// lsqbench: benchmark and solve driver for the lsq library.
//
// Subcommands:
//   table    median iterations / CPU time of CD, RCD, GSO, RGSO over repeated
//            runs on generated problems, with CPU speed-up ratios
//   sweep-c  condition growth and CD/RCD iteration medians as the entry
//            interval [c,1) narrows
//   solve    run one method on a MatrixMarket system read from disk

#include "lsq/bench.hpp"
#include "lsq/io.hpp"
#include "lsq/metrics.hpp"
#include "lsq/oracle.hpp"
#include "lsq/solvers.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

struct StopFlags {
  std::string mode = "rre";
  double threshold = 0.5e-6;
  std::int64_t max_iters = 500000;
  std::int64_t check_every = 0;
};

struct ObliqueFlags {
  double epsilon = 1e-12;
  std::string mode = "relative";
};

void add_stop_flags(CLI::App* cmd, StopFlags& f, const std::string& default_mode) {
  f.mode = default_mode;
  cmd->add_option("--stop-mode", f.mode, "Stop rule: rre | gradient | solution-error")
      ->check(CLI::IsMember({"rre", "gradient", "solution-error"}))
      ->capture_default_str();
  cmd->add_option("--threshold", f.threshold, "Stop threshold")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap")->capture_default_str();
  cmd->add_option("--check-every", f.check_every,
                  "Stop-check cadence in iterations (0 = default for the mode)")
      ->capture_default_str();
}

void add_oblique_flags(CLI::App* cmd, ObliqueFlags& f) {
  cmd->add_option("--epsilon", f.epsilon, "Oblique skip tolerance")->capture_default_str();
  cmd->add_option("--epsilon-mode", f.mode,
                  "Skip guard: relative (epsilon * N(i)) or absolute")
      ->check(CLI::IsMember({"relative", "absolute"}))
      ->capture_default_str();
}

lsq::StopRule to_stop_rule(const StopFlags& f) {
  lsq::StopRule stop;
  if (f.mode == "rre") stop.mode = lsq::StopMode::ResidualRelativeError;
  else if (f.mode == "gradient") stop.mode = lsq::StopMode::GradientRelative;
  else stop.mode = lsq::StopMode::SolutionError;
  stop.threshold = f.threshold;
  stop.max_iters = f.max_iters;
  stop.check_every = f.check_every;
  return stop;
}

lsq::ObliqueConfig to_oblique(const ObliqueFlags& f) {
  lsq::ObliqueConfig cfg;
  cfg.epsilon = f.epsilon;
  cfg.skip_mode = f.mode == "absolute" ? lsq::SkipMode::Absolute
                                       : lsq::SkipMode::RelativeToNormSq;
  return cfg;
}

std::vector<lsq::Method> parse_methods(const std::string& list) {
  std::vector<lsq::Method> methods;
  std::string token;
  std::istringstream in(list);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    if (token == "all") {
      return {lsq::Method::CD, lsq::Method::RCD, lsq::Method::GSO, lsq::Method::RGSO};
    }
    auto m = lsq::parse_method(token);
    if (!m) throw CLI::ValidationError("--methods", "unknown method '" + token + "'");
    methods.push_back(*m);
  }
  if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");
  return methods;
}

int write_csv_out(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path == "-") {
    emit(std::cout);
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  emit(out);
  return 0;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative least-squares solvers: coordinate descent and oblique-direction "
               "Gauss-Seidel, with benchmark harness"};
  app.require_subcommand(1);

  // --- table ---
  auto* table = app.add_subcommand("table", "Median IT/CPU over repeated runs");
  std::vector<lsq::Index> rows_list{1000};
  std::vector<lsq::Index> cols_list{50};
  std::vector<double> c_list{0.0};
  bool consistent = true;
  std::string methods_str = "all";
  int repeats = 50;
  std::uint64_t seed = 1;
  int threads = default_threads();
  std::string out_path = "-";
  StopFlags table_stop;
  ObliqueFlags table_oblique;
  table->add_option("--rows", rows_list, "Row counts (cross product with --cols and --c)")
      ->delimiter(',')
      ->capture_default_str();
  table->add_option("--cols", cols_list, "Column counts")->delimiter(',')->capture_default_str();
  table->add_option("--c", c_list, "Lower endpoints of the entry interval [c,1)")
      ->delimiter(',')
      ->capture_default_str();
  table->add_option("--consistent", consistent, "Plant a consistent system (0/1)")
      ->capture_default_str();
  table->add_option("--methods", methods_str, "Comma list of cd,rcd,gso,rgso or 'all'")
      ->capture_default_str();
  table->add_option("--repeats", repeats, "Runs per spec")->capture_default_str();
  table->add_option("--seed", seed, "Master seed")->capture_default_str();
  table->add_option("--threads", threads, "Worker threads across repeats")
      ->capture_default_str();
  table->add_option("--out", out_path, "Output CSV path ('-' = stdout)")
      ->capture_default_str();
  add_stop_flags(table, table_stop, "rre");
  add_oblique_flags(table, table_oblique);

  // --- sweep-c ---
  auto* sweep = app.add_subcommand("sweep-c", "kappa_F^2 and CD/RCD medians vs c");
  lsq::Index sweep_m = 3000, sweep_n = 50;
  std::vector<double> sweep_c = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int sweep_repeats = 10;
  std::uint64_t sweep_seed = 1;
  std::int64_t it_cap = 800000;
  double sweep_threshold = 0.5e-6;
  int sweep_threads = default_threads();
  std::string sweep_out = "-";
  sweep->add_option("--rows", sweep_m, "Row count")->capture_default_str();
  sweep->add_option("--cols", sweep_n, "Column count")->capture_default_str();
  sweep->add_option("--c", sweep_c, "Strictly increasing c grid")->delimiter(',')->capture_default_str();
  sweep->add_option("--repeats", sweep_repeats, "Runs per c")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "Master seed")->capture_default_str();
  sweep->add_option("--max-iters", it_cap, "Iteration cap for CD and RCD")
      ->capture_default_str();
  sweep->add_option("--threshold", sweep_threshold, "RRE threshold")->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output CSV path ('-' = stdout)")
      ->capture_default_str();

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "Solve a system from files");
  std::string matrix_path, rhs_path;
  std::string method_str = "gso";
  std::uint64_t solve_seed = 1;
  std::string solve_out = "x.txt";
  StopFlags solve_stop;
  ObliqueFlags solve_oblique;
  solve->add_option("matrix", matrix_path, "MatrixMarket array file (dense, real, general)")
      ->required();
  solve->add_option("rhs", rhs_path, "Right-hand side: whitespace-separated decimals")
      ->required();
  solve->add_option("--method", method_str, "cd | rcd | gso | rgso")
      ->check(CLI::IsMember({"cd", "rcd", "gso", "rgso"}))
      ->capture_default_str();
  solve->add_option("--seed", solve_seed, "Seed for randomized methods")
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Solution output path")->capture_default_str();
  add_stop_flags(solve, solve_stop, "gradient");
  add_oblique_flags(solve, solve_oblique);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (table->parsed()) {
      lsq::TableOptions options;
      for (lsq::Index m : rows_list)
        for (lsq::Index n : cols_list)
          for (double c : c_list) options.specs.push_back({m, n, c, consistent});
      options.methods = parse_methods(methods_str);
      options.repeats = repeats;
      options.master_seed = seed;
      options.stop = to_stop_rule(table_stop);
      options.oblique = to_oblique(table_oblique);
      options.threads = threads;
      const lsq::TableResult result = lsq::run_table(options);
      return write_csv_out(out_path,
                           [&](std::ostream& os) { lsq::write_table_csv(result, os); });
    }

    if (sweep->parsed()) {
      lsq::SweepOptions options;
      options.m = sweep_m;
      options.n = sweep_n;
      options.c_grid = sweep_c;
      options.repeats = sweep_repeats;
      options.master_seed = sweep_seed;
      options.it_cap = it_cap;
      options.threshold = sweep_threshold;
      options.threads = sweep_threads;
      const auto rows = lsq::run_sweep_c(options);
      return write_csv_out(sweep_out,
                           [&](std::ostream& os) { lsq::write_sweep_csv(rows, os); });
    }

    // solve
    const lsq::DenseMatrix a{lsq::read_matrix_market_array(matrix_path)};
    const lsq::Vector b = lsq::read_vector(rhs_path);
    if (b.size() != a.rows()) {
      std::cerr << "error: rhs has length " << b.size() << ", matrix has " << a.rows()
                << " rows\n";
      return 1;
    }
    const lsq::StopRule stop = to_stop_rule(solve_stop);
    const lsq::ObliqueConfig cfg = to_oblique(solve_oblique);
    const lsq::Vector x0 = lsq::Vector::Zero(a.cols());
    const lsq::Method method = *lsq::parse_method(method_str);
    lsq::Rng rng(solve_seed);
    lsq::SolveReport rep;
    switch (method) {
      case lsq::Method::CD: rep = lsq::solve_cd(a, b, x0, stop); break;
      case lsq::Method::RCD: rep = lsq::solve_rcd(a, b, x0, stop, {}, rng); break;
      case lsq::Method::GSO: rep = lsq::solve_gso(a, b, x0, stop, cfg); break;
      case lsq::Method::RGSO: rep = lsq::solve_rgso(a, b, x0, stop, cfg, {}, rng); break;
    }
    lsq::write_vector(rep.x_final, solve_out);
    std::cout << "method " << lsq::method_name(method) << ": iterations " << rep.iterations
              << ", updates " << rep.updates_applied << ", skips " << rep.skips
              << ", final metric " << rep.final_metric << ", "
              << (rep.termination == lsq::Termination::Converged ? "converged"
                                                                 : "hit iteration cap")
              << "\n";
    return rep.termination == lsq::Termination::Converged ? 0 : 2;
  } catch (const lsq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lsq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

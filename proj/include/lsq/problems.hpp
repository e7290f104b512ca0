#pragma once

#include "lsq/dense_matrix.hpp"
#include "lsq/rng.hpp"

#include <optional>
#include <string_view>

namespace lsq {

enum class ProblemKind { Consistent, Inconsistent, Unknown };

/// Metadata a stop rule may need: a known least-squares solution and/or the
/// null(A^T) component of b.
struct ProblemMeta {
  std::optional<Vector> x_star;
  std::optional<Vector> b_null;
};

/// A least-squares instance min ||Ax - b|| with optional planted structure.
struct LeastSquaresProblem {
  DenseMatrix a;
  Vector b;
  std::optional<Vector> x_planted;  ///< a known least-squares solution
  std::optional<Vector> b_null;     ///< component of b in null(A^T)
  ProblemKind kind = ProblemKind::Unknown;

  ProblemMeta meta() const {
    return ProblemMeta{x_planted, b_null};
  }
};

/// Benchmark problem recipe: m x n entries i.i.d. uniform on [c,1), planted
/// consistent or inconsistent, all randomness from `seed`.
struct GeneratorSpec {
  Index m = 0;
  Index n = 0;
  double c = 0.0;
  bool consistent = true;
  std::uint64_t seed = 0;
};

/// m x n matrix with entries i.i.d. uniform on [c,1), filled column-major from
/// the stream. Throws BadInterval unless 0 <= c < 1.
DenseMatrix gen_uniform_matrix(Index m, Index n, double c, Rng& rng);

/// Plants x~ uniform[0,1)^n and sets b = A x~ (kind Consistent, b_null = 0).
LeastSquaresProblem plant_consistent(DenseMatrix a, Rng& rng);

/// Plants x~ uniform[0,1)^n, then draws z uniform[0,1)^m and projects it onto
/// null(A^T) for the inconsistent part: b = A x~ + null_scale * b_null.
/// Redraws z up to 10 times when the projection is negligible; throws
/// NullSpaceEmpty when A^T has (numerically) full row rank.
LeastSquaresProblem plant_inconsistent(DenseMatrix a, Rng& rng, double null_scale = 1.0);

/// Consistent problem with a caller-chosen solution: b = A x_tilde.
LeastSquaresProblem make_consistent(DenseMatrix a, Vector x_tilde);

/// Inconsistent problem from explicit parts: b = A x_tilde + b_null. Validates
/// ||A^T b_null|| <= 1e-8 ||A||_F ||b_null||.
LeastSquaresProblem make_inconsistent(DenseMatrix a, Vector x_tilde, Vector b_null);

/// Generates the problem a GeneratorSpec describes.
LeastSquaresProblem make_problem(const GeneratorSpec& spec);

/// Built-in 2-column demo systems with near-parallel columns; all have
/// planted solution (1,1).
enum class Fixture {
  SquareConsistent,  ///< 2x2, consistent
  TallConsistent,    ///< 3x2, overdetermined, consistent
  TallInconsistent,  ///< 3x2, overdetermined, inconsistent
};

LeastSquaresProblem fixture(Fixture which);

/// Lookup by name: "square_consistent", "tall_consistent", "tall_inconsistent".
/// Throws UnknownFixture otherwise.
LeastSquaresProblem fixture(std::string_view name);

}  // namespace lsq

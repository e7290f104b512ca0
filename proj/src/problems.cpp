#include "lsq/problems.hpp"

#include "lsq/oracle.hpp"

#include <cmath>

namespace lsq {

DenseMatrix gen_uniform_matrix(Index m, Index n, double c, Rng& rng) {
  if (c < 0.0 || c >= 1.0)
    throw BadInterval("entry interval lower endpoint must satisfy 0 <= c < 1");
  if (m < 1 || n < 1) throw DimensionMismatch("matrix dimensions must be positive");
  Matrix values(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) values(i, j) = rng.uniform(c, 1.0);
  return DenseMatrix(std::move(values));
}

static Vector draw_uniform_vector(Index len, Rng& rng) {
  Vector v(len);
  for (Index i = 0; i < len; ++i) v[i] = rng.uniform();
  return v;
}

LeastSquaresProblem plant_consistent(DenseMatrix a, Rng& rng) {
  Vector x_tilde = draw_uniform_vector(a.cols(), rng);
  return make_consistent(std::move(a), std::move(x_tilde));
}

LeastSquaresProblem plant_inconsistent(DenseMatrix a, Rng& rng, double null_scale) {
  Vector x_tilde = draw_uniform_vector(a.cols(), rng);
  Vector b_null;
  bool found = false;
  for (int attempt = 0; attempt < 10 && !found; ++attempt) {
    Vector z = draw_uniform_vector(a.rows(), rng);
    b_null = project_null_t(a, z);
    found = b_null.norm() > 1e-10 * z.norm();
  }
  if (!found)
    throw NullSpaceEmpty("null(A^T) is numerically trivial; cannot plant an inconsistency");
  if (null_scale != 1.0) b_null *= null_scale;

  LeastSquaresProblem p{std::move(a), Vector{}, std::move(x_tilde), std::move(b_null),
                        ProblemKind::Inconsistent};
  p.b = p.a.values() * *p.x_planted + *p.b_null;
  return p;
}

LeastSquaresProblem make_consistent(DenseMatrix a, Vector x_tilde) {
  if (x_tilde.size() != a.cols())
    throw DimensionMismatch("make_consistent: x_tilde must have length n");
  Vector zero = Vector::Zero(a.rows());
  LeastSquaresProblem p{std::move(a), Vector{}, std::move(x_tilde), std::move(zero),
                        ProblemKind::Consistent};
  p.b = p.a.values() * *p.x_planted;
  return p;
}

LeastSquaresProblem make_inconsistent(DenseMatrix a, Vector x_tilde, Vector b_null) {
  if (x_tilde.size() != a.cols() || b_null.size() != a.rows())
    throw DimensionMismatch("make_inconsistent: x_tilde length n, b_null length m");
  const double ortho = (a.values().transpose() * b_null).norm();
  if (ortho > 1e-8 * std::sqrt(a.frob_norm_sq()) * b_null.norm())
    throw DimensionMismatch("make_inconsistent: b_null is not orthogonal to range(A)");
  LeastSquaresProblem p{std::move(a), Vector{}, std::move(x_tilde), std::move(b_null),
                        ProblemKind::Inconsistent};
  p.b = p.a.values() * *p.x_planted + *p.b_null;
  return p;
}

LeastSquaresProblem make_problem(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  DenseMatrix a = gen_uniform_matrix(spec.m, spec.n, spec.c, rng);
  return spec.consistent ? plant_consistent(std::move(a), rng)
                         : plant_inconsistent(std::move(a), rng);
}

LeastSquaresProblem fixture(Fixture which) {
  Vector x_tilde(2);
  x_tilde << 1.0, 1.0;
  switch (which) {
    case Fixture::SquareConsistent: {
      Matrix a(2, 2);
      a << 5, 45, 9, 80;
      return make_consistent(DenseMatrix(std::move(a)), x_tilde);
    }
    case Fixture::TallConsistent: {
      Matrix a(3, 2);
      a << 1, 11, -2, -21, 3, 32;
      return make_consistent(DenseMatrix(std::move(a)), x_tilde);
    }
    case Fixture::TallInconsistent: {
      Matrix a(3, 2);
      a << 1, 9, 4, 36, 13, 118;
      Vector b_null(3);
      b_null << -10.0, 2.5, 0.0;
      return make_inconsistent(DenseMatrix(std::move(a)), x_tilde, std::move(b_null));
    }
  }
  throw UnknownFixture("invalid fixture id");
}

LeastSquaresProblem fixture(std::string_view name) {
  if (name == "square_consistent") return fixture(Fixture::SquareConsistent);
  if (name == "tall_consistent") return fixture(Fixture::TallConsistent);
  if (name == "tall_inconsistent") return fixture(Fixture::TallInconsistent);
  throw UnknownFixture("unknown fixture: " + std::string(name));
}

}  // namespace lsq

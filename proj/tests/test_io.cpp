#include "lsq/io.hpp"

#include "lsq/rng.hpp"

#include <doctest.h>

#include <sstream>

using lsq::Matrix;
using lsq::Vector;

TEST_CASE("matrix market array round trip is lossless") {
  lsq::Rng rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const lsq::Index m = 1 + static_cast<lsq::Index>(rng.below(8));
    const lsq::Index n = 1 + static_cast<lsq::Index>(rng.below(8));
    Matrix a(m, n);
    for (lsq::Index j = 0; j < n; ++j)
      for (lsq::Index i = 0; i < m; ++i) a(i, j) = rng.uniform(-1e6, 1e6);

    std::stringstream buf;
    lsq::write_matrix_market_array(a, buf);
    const Matrix back = lsq::read_matrix_market_array(buf, "roundtrip");
    REQUIRE(back.rows() == m);
    REQUIRE(back.cols() == n);
    CHECK(back == a);  // 17 significant digits reproduce binary64 exactly
  }
}

TEST_CASE("matrix market reader accepts comments and case variations") {
  std::istringstream in(
      "%%MatrixMarket MATRIX Array Real General\n"
      "% a comment line\n"
      "2 2\n"
      "1.5\n% interleaved comment\n2.5\n-3\n4e2\n");
  const Matrix a = lsq::read_matrix_market_array(in, "t");
  CHECK(a(0, 0) == 1.5);
  CHECK(a(1, 0) == 2.5);
  CHECK(a(0, 1) == -3.0);
  CHECK(a(1, 1) == 400.0);
}

TEST_CASE("matrix market reader rejects malformed input") {
  {
    std::istringstream in("%%MatrixMarket matrix coordinate real general\n2 2 3\n");
    CHECK_THROWS_AS(lsq::read_matrix_market_array(in, "t"), lsq::ParseError);
  }
  {
    std::istringstream in("not a header\n2 2\n1 2 3 4\n");
    CHECK_THROWS_AS(lsq::read_matrix_market_array(in, "t"), lsq::ParseError);
  }
  {
    std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n");
    CHECK_THROWS_AS(lsq::read_matrix_market_array(in, "t"), lsq::ParseError);  // short
  }
  {
    std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n5\n");
    CHECK_THROWS_AS(lsq::read_matrix_market_array(in, "t"), lsq::ParseError);  // long
  }
  {
    std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n1\nx\n3\n4\n");
    try {
      lsq::read_matrix_market_array(in, "t");
      FAIL("expected ParseError");
    } catch (const lsq::ParseError& e) {
      CHECK(e.line() == 4);  // the bad token is on line 4
    }
  }
  {
    std::istringstream in("%%MatrixMarket matrix array real general\n0 2\n");
    CHECK_THROWS_AS(lsq::read_matrix_market_array(in, "t"), lsq::ParseError);
  }
}

TEST_CASE("values are stored column-major") {
  std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  const Matrix a = lsq::read_matrix_market_array(in, "t");
  CHECK(a(0, 0) == 1.0);
  CHECK(a(1, 0) == 2.0);
  CHECK(a(0, 1) == 3.0);
  CHECK(a(1, 1) == 4.0);
}

TEST_CASE("vector io") {
  std::stringstream buf;
  Vector v(4);
  v << 0.1, -2.75, 3e-17, 4;
  lsq::write_vector(v, buf);
  const Vector back = lsq::read_vector(buf, "t");
  REQUIRE(back.size() == 4);
  CHECK(back == v);

  std::istringstream multi("1 2 3\n4 5\n");
  CHECK(lsq::read_vector(multi, "t").size() == 5);

  std::istringstream bad("1 2 oops\n");
  CHECK_THROWS_AS(lsq::read_vector(bad, "t"), lsq::ParseError);

  std::istringstream empty("\n\n");
  CHECK_THROWS_AS(lsq::read_vector(empty, "t"), lsq::ParseError);
}

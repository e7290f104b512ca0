#pragma once

#include "lsq/errors.hpp"
#include "lsq/types.hpp"

#include <iosfwd>
#include <string>

namespace lsq {

/// Reads a dense matrix in MatrixMarket array format:
///   %%MatrixMarket matrix array real general
///   % comments
///   m n
///   ...m*n values, column-major...
/// Header tokens are case-insensitive. Throws ParseError with a line number.
Matrix read_matrix_market_array(const std::string& path);
Matrix read_matrix_market_array(std::istream& in, const std::string& name = "<stream>");

/// Writes the matching array-format file, one value per line, column-major,
/// 17 significant digits (lossless for binary64).
void write_matrix_market_array(const Matrix& a, const std::string& path);
void write_matrix_market_array(const Matrix& a, std::ostream& out);

/// Whitespace-separated decimal text, any layout.
Vector read_vector(const std::string& path);
Vector read_vector(std::istream& in, const std::string& name = "<stream>");

/// One value per line, 17 significant digits.
void write_vector(const Vector& v, const std::string& path);
void write_vector(const Vector& v, std::ostream& out);

}  // namespace lsq

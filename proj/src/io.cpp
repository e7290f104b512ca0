#include "lsq/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lsq {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& tok, const std::string& name, long line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError(name + ": expected a number, got '" + tok + "'", line);
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix read_matrix_market_array(std::istream& in, const std::string& name) {
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) throw ParseError(name + ": empty file", 1);
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix")
    throw ParseError(name + ": not a MatrixMarket matrix file", lineno);
  if (lower(format) != "array")
    throw ParseError(name + ": expected 'array' format, got '" + format + "'", lineno);
  if (lower(field) != "real")
    throw ParseError(name + ": expected 'real' field, got '" + field + "'", lineno);
  if (lower(symmetry) != "general")
    throw ParseError(name + ": expected 'general' symmetry, got '" + symmetry + "'", lineno);

  long rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols))
      throw ParseError(name + ": expected 'rows cols'", lineno);
    std::string extra;
    if (size_line >> extra)
      throw ParseError(name + ": unexpected token '" + extra + "' after dimensions", lineno);
    break;
  }
  if (rows < 1 || cols < 1)
    throw ParseError(name + ": invalid dimensions " + std::to_string(rows) + " x " +
                         std::to_string(cols),
                     lineno);

  Matrix a(rows, cols);
  long count = 0;
  const long total = rows * cols;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream values(line);
    std::string tok;
    while (values >> tok) {
      if (count >= total)
        throw ParseError(name + ": more than " + std::to_string(total) + " values", lineno);
      // column-major listing
      a(count % rows, count / rows) = parse_double(tok, name, lineno);
      ++count;
    }
  }
  if (count != total)
    throw ParseError(name + ": expected " + std::to_string(total) + " values, got " +
                         std::to_string(count),
                     lineno);
  return a;
}

Matrix read_matrix_market_array(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix_market_array(in, path);
}

void write_matrix_market_array(const Matrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << " " << a.cols() << "\n";
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out << fmt17(a(i, j)) << "\n";
}

void write_matrix_market_array(const Matrix& a, const std::string& path) {
  std::ofstream out = open_output(path);
  write_matrix_market_array(a, out);
}

Vector read_vector(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) values.push_back(parse_double(tok, name, lineno));
  }
  if (values.empty()) throw ParseError(name + ": no values found", lineno);
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector read_vector(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_vector(in, path);
}

void write_vector(const Vector& v, std::ostream& out) {
  for (Index i = 0; i < v.size(); ++i) out << fmt17(v[i]) << "\n";
}

void write_vector(const Vector& v, const std::string& path) {
  std::ofstream out = open_output(path);
  write_vector(v, out);
}

}  // namespace lsq

#include "pbro/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbro {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, std::size_t line_no) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": not a decimal real: '" + tok + "'");
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite entry '" + tok + "'");
  }
  return v;
}

std::size_t parse_dim(const std::string& tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) {
    throw std::runtime_error("bad matrix dimension '" + tok + "'");
  }
  return v;
}

}  // namespace

MatrixGame read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("missing matrix header");
  const auto header = split_fields(line);
  if (header.size() != 2) throw std::runtime_error("matrix header must be 'm n'");
  const std::size_t m = parse_dim(header[0]);
  const std::size_t n = parse_dim(header[1]);

  std::vector<double> data;
  data.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("expected " + std::to_string(m) + " matrix rows");
    const auto fields = split_fields(line);
    if (fields.size() != n) {
      throw std::runtime_error("line " + std::to_string(i + 2) + ": expected " + std::to_string(n) + " entries");
    }
    for (const auto& f : fields) data.push_back(parse_real(f, i + 2));
  }
  while (std::getline(in, line)) {
    if (!split_fields(line).empty()) throw std::runtime_error("trailing data after matrix rows");
  }
  return MatrixGame(m, n, std::move(data));
}

MatrixGame read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const MatrixGame& game) {
  out << game.rows() << ' ' << game.cols() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, game(i, j));
      if (j) out << ' ';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const MatrixGame& game) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix(out, game);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace pbro

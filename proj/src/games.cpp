#include "pbro/games.hpp"

#include <stdexcept>

namespace pbro::games {
namespace {

void require_positive(std::size_t n, const char* name) {
  if (n == 0) throw std::invalid_argument(std::string(name) + " needs n >= 1");
}

}  // namespace

MatrixGame make_L(std::size_t n) {
  require_positive(n, "make_L");
  MatrixGame g(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.at(i, j) = j > i ? 1.0 : (j < i ? -1.0 : 0.0);
  }
  return g;
}

MatrixGame make_S(std::size_t n) { return make_L(n).transposed(); }

MatrixGame make_U(std::size_t n) {
  require_positive(n, "make_U");
  MatrixGame g(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      if (j == i + 1) v = -2.0;
      else if (j > i + 1) v = -1.0;
      else if (j + 1 == i) v = 2.0;
      else if (j + 1 < i) v = 1.0;
      g.at(i, j) = v;
    }
  }
  return g;
}

MatrixGame make_U_T(std::size_t n) { return make_U(n).transposed(); }

MatrixGame make_random_unit(std::size_t n, RandomSource rng) {
  require_positive(n, "make_random_unit");
  std::vector<double> data(n * n);
  for (double& v : data) v = rng.next_unit();
  return MatrixGame(n, n, std::move(data));
}

MatrixGame make_morra(std::size_t fingers) {
  require_positive(fingers, "make_morra");
  const std::size_t f = fingers;
  const std::size_t dim = f * f;
  MatrixGame g(dim, dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t s1 = r / f + 1;
    const std::size_t g1 = r % f + 1;
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t s2 = c / f + 1;
      const std::size_t g2 = c % f + 1;
      const bool row_right = g1 == s2;
      const bool col_right = g2 == s1;
      const auto stake = static_cast<double>(s1 + s2);
      if (col_right && !row_right) g.at(r, c) = stake;
      else if (row_right && !col_right) g.at(r, c) = -stake;
    }
  }
  return g;
}

std::vector<std::vector<int>> compositions(int units, int fields) {
  if (fields < 1 || units < 0) throw std::invalid_argument("compositions needs fields >= 1 and units >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(fields), 0);
  // Depth-first with ascending values at each position gives lexicographic order.
  auto recurse = [&](auto&& self, int pos, int left) -> void {
    if (pos == fields - 1) {
      current[static_cast<std::size_t>(pos)] = left;
      out.push_back(current);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      current[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  recurse(recurse, 0, units);
  return out;
}

MatrixGame make_blotto(int fields, int units) {
  const auto strategies = compositions(units, fields);
  const std::size_t n = strategies.size();
  MatrixGame g(n, n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      int score = 0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(fields); ++k) {
        if (strategies[c][k] > strategies[r][k]) ++score;
        else if (strategies[r][k] > strategies[c][k]) --score;
      }
      g.at(r, c) = score;
    }
  }
  return g;
}

}  // namespace pbro::games

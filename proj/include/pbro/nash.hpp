#pragma once

#include <stdexcept>

#include "pbro/matrix_game.hpp"

namespace pbro {

struct NashSolution {
  MixedStrategy row;
  MixedStrategy col;
  double value;
};

// Raised when the simplex exceeds its pivot budget or loses feasibility.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves the zero-sum game by the textbook linear program: entries are
// shifted positive, the row player's problem max sum(x) s.t. A^T x <= 1 is
// solved by a dense tableau simplex, and the column strategy is read off the
// optimal dual. Pivots use the greatest-improvement rule; if that exceeds the
// budget of 10 * (m + n + 1) pivots, or its solution fails the exploitability
// check, the program is re-solved with Dantzig's rule under the same budget. Both fall back to Bland's rule on degenerate
// steps, which rules out cycling.
NashSolution nash_lp(const MatrixGame& game);

// Exhaustive search over square support pairs (every matrix game has an
// extreme equilibrium on a square nonsingular submatrix). Only for m, n <= 6;
// used to validate nash_lp.
NashSolution support_enum_nash(const MatrixGame& game);

}  // namespace pbro

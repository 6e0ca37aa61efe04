#pragma once

#include <cstddef>
#include <vector>

#include "pbro/matrix_game.hpp"
#include "pbro/random_source.hpp"

namespace pbro::games {

// "Greater number wins": L(i,j) = 0 on the diagonal, 1 above, -1 below.
// Unique equilibrium at the last row and column.
MatrixGame make_L(std::size_t n);
// Dual game S = L^T ("smaller number wins"), equilibrium at the first row/column.
MatrixGame make_S(std::size_t n);

// Variant with unique best responses: U(i,i) = 0, U(i,i+1) = -2, U(i,j) = -1
// for j > i+1, U(i,i-1) = 2, U(i,j) = 1 for j < i-1. Equilibrium at the first
// row and column.
MatrixGame make_U(std::size_t n);
MatrixGame make_U_T(std::size_t n);

// n x n game with i.i.d. U(0, 1) entries.
MatrixGame make_random_unit(std::size_t n, RandomSource rng);

// f-finger Morra. Pure strategy (show s, guess g), s, g in 1..f, ordered
// lexicographically. The sole correct guesser wins s1 + s2.
MatrixGame make_morra(std::size_t fingers);

// All compositions of `units` into `fields` nonnegative parts, in
// lexicographic order.
std::vector<std::vector<int>> compositions(int units, int fields);

// Colonel Blotto. Entry = fields won by the column allocation minus fields
// won by the row allocation; ties count zero.
MatrixGame make_blotto(int fields, int units);

}  // namespace pbro::games

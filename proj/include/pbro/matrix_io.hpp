#pragma once

#include <filesystem>
#include <iosfwd>

#include "pbro/matrix_game.hpp"

namespace pbro {

// Plain-text exchange format: a first line "m n", then m lines of n decimal
// reals separated by spaces. NaN and infinities are rejected.
MatrixGame read_matrix(std::istream& in);
MatrixGame read_matrix_file(const std::filesystem::path& path);

// Writes with round-trip precision and '\n' line endings.
void write_matrix(std::ostream& out, const MatrixGame& game);
void write_matrix_file(const std::filesystem::path& path, const MatrixGame& game);

}  // namespace pbro

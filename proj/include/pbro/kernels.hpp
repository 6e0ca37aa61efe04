#pragma once

// Inner loops shared by the oracles and solvers. Every kernel exists twice:
// `serial` is the reference implementation and `omp` the OpenMP version.
// Both produce bit-identical results: each output element is accumulated in
// the same order, and reductions break ties toward the least index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pbro/matrix_game.hpp"

namespace pbro::kernels {

// Nonzero entries of a weight vector, in increasing index order.
struct SparseWeights {
  std::vector<std::size_t> index;
  std::vector<double> weight;

  static SparseWeights from_dense(std::span<const double> dense);
  std::size_t nnz() const { return index.size(); }
};

struct Extreme {
  std::size_t index;
  double value;
};

namespace serial {

// out[i] = sum_k M(i, index_k) * weight_k
void row_values(const MatrixGame& game, const SparseWeights& col_weights, std::span<double> out);
// out[j] = sum_k weight_k * M(index_k, j)
void col_values(const MatrixGame& game, const SparseWeights& row_weights, std::span<double> out);

// Same products on the cluster-perturbed matrix M + sum_k z_k B_k, where
// clusters[i * cols + j] is the cluster of cell (i, j).
void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& col_weights,
                        std::span<double> out);
void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& row_weights,
                        std::span<double> out);

Extreme argmin(std::span<const double> values);
Extreme argmax(std::span<const double> values);
// argmin_i (values_i - noise_i) and argmax_j (values_j + noise_j).
Extreme argmin_minus(std::span<const double> values, std::span<const double> noise);
Extreme argmax_plus(std::span<const double> values, std::span<const double> noise);

}  // namespace serial

namespace omp {

void row_values(const MatrixGame& game, const SparseWeights& col_weights, std::span<double> out);
void col_values(const MatrixGame& game, const SparseWeights& row_weights, std::span<double> out);
void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& col_weights,
                        std::span<double> out);
void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& row_weights,
                        std::span<double> out);
Extreme argmin(std::span<const double> values);
Extreme argmax(std::span<const double> values);
Extreme argmin_minus(std::span<const double> values, std::span<const double> noise);
Extreme argmax_plus(std::span<const double> values, std::span<const double> noise);

int max_threads();

}  // namespace omp

// Dispatchers: small problems stay serial, large ones go to OpenMP.
inline constexpr std::size_t kParallelWork = 1u << 16;

void row_values(const MatrixGame& game, const SparseWeights& col_weights, std::span<double> out);
void col_values(const MatrixGame& game, const SparseWeights& row_weights, std::span<double> out);
void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& col_weights,
                        std::span<double> out);
void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& row_weights,
                        std::span<double> out);
Extreme argmin(std::span<const double> values);
Extreme argmax(std::span<const double> values);
Extreme argmin_minus(std::span<const double> values, std::span<const double> noise);
Extreme argmax_plus(std::span<const double> values, std::span<const double> noise);

}  // namespace pbro::kernels

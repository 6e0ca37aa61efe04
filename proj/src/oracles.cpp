#include "pbro/oracles.hpp"

#include <stdexcept>
#include <vector>

#include "pbro/kernels.hpp"

namespace pbro {

Subgame ResponseOracles::restrict(const SupportSet& rows, const SupportSet& cols) const {
  if (rows.empty() || cols.empty()) throw std::invalid_argument("restricted game needs non-empty index sets");
  std::vector<double> data;
  data.reserve(rows.size() * cols.size());
  for (std::size_t i : rows.indices()) {
    for (std::size_t j : cols.indices()) data.push_back(entry(i, j));
  }
  return {MatrixGame(rows.size(), cols.size(), std::move(data)), rows.indices(), cols.indices()};
}

Response MatrixOracles::respond_row(std::span<const double> col_weights, const PerturbationSpec& spec,
                                    RandomSource& rng) const {
  if (col_weights.size() != game_.cols()) throw std::invalid_argument("column weights dimension mismatch");
  std::vector<double> values(game_.rows());
  kernels::row_values(game_, kernels::SparseWeights::from_dense(col_weights), values);
  const auto exact = kernels::argmin(values);
  if (!spec.active()) return {exact.index, exact.value};
  std::vector<double> noise(values.size());
  spec.sample(rng, noise);
  return {kernels::argmin_minus(values, noise).index, exact.value};
}

Response MatrixOracles::respond_col(std::span<const double> row_weights, const PerturbationSpec& spec,
                                    RandomSource& rng) const {
  if (row_weights.size() != game_.rows()) throw std::invalid_argument("row weights dimension mismatch");
  std::vector<double> values(game_.cols());
  kernels::col_values(game_, kernels::SparseWeights::from_dense(row_weights), values);
  const auto exact = kernels::argmax(values);
  if (!spec.active()) return {exact.index, exact.value};
  std::vector<double> noise(values.size());
  spec.sample(rng, noise);
  return {kernels::argmax_plus(values, noise).index, exact.value};
}

Subgame MatrixOracles::restrict(const SupportSet& rows, const SupportSet& cols) const {
  return submatrix(game_, rows, cols);
}

ClusterOracles::ClusterOracles(const MatrixGame& game, const ClusterMap& clusters)
    : game_(game), clusters_(clusters) {
  if (clusters.rows() != game.rows() || clusters.cols() != game.cols()) {
    throw std::invalid_argument("cluster map shape does not match the game");
  }
}

Response ClusterOracles::respond_row(std::span<const double> col_weights, const PerturbationSpec& spec,
                                     RandomSource& rng) const {
  if (col_weights.size() != game_.cols()) throw std::invalid_argument("column weights dimension mismatch");
  const auto sparse = kernels::SparseWeights::from_dense(col_weights);
  std::vector<double> values(game_.rows());
  kernels::row_values(game_, sparse, values);
  const auto exact = kernels::argmin(values);
  if (!spec.active()) return {exact.index, exact.value};
  std::vector<double> z(clusters_.clusters());
  spec.sample(rng, z);
  kernels::cluster_row_values(game_, clusters_.cells(), z, sparse, values);
  return {kernels::argmin(values).index, exact.value};
}

Response ClusterOracles::respond_col(std::span<const double> row_weights, const PerturbationSpec& spec,
                                     RandomSource& rng) const {
  if (row_weights.size() != game_.rows()) throw std::invalid_argument("row weights dimension mismatch");
  const auto sparse = kernels::SparseWeights::from_dense(row_weights);
  std::vector<double> values(game_.cols());
  kernels::col_values(game_, sparse, values);
  const auto exact = kernels::argmax(values);
  if (!spec.active()) return {exact.index, exact.value};
  std::vector<double> z(clusters_.clusters());
  spec.sample(rng, z);
  kernels::cluster_col_values(game_, clusters_.cells(), z, sparse, values);
  return {kernels::argmax(values).index, exact.value};
}

Subgame ClusterOracles::restrict(const SupportSet& rows, const SupportSet& cols) const {
  return submatrix(game_, rows, cols);
}

}  // namespace pbro

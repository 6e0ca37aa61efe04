#include <stdexcept>

#include "pbro/kernels.hpp"

namespace pbro::kernels {

SparseWeights SparseWeights::from_dense(std::span<const double> dense) {
  SparseWeights out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) {
      out.index.push_back(i);
      out.weight.push_back(dense[i]);
    }
  }
  return out;
}

namespace serial {

void row_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  const std::size_t m = game.rows();
  const std::size_t nnz = w.nnz();
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = game.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < nnz; ++k) acc += row[w.index[k]] * w.weight[k];
    out[i] = acc;
  }
}

void col_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  const std::size_t n = game.cols();
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < w.nnz(); ++k) {
    const auto row = game.row(w.index[k]);
    const double wk = w.weight[k];
    for (std::size_t j = 0; j < n; ++j) out[j] += wk * row[j];
  }
}

void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = game.row(i);
    const std::uint32_t* cl = clusters.data() + i * n;
    double acc = 0.0;
    for (std::size_t k = 0; k < w.nnz(); ++k) {
      const std::size_t j = w.index[k];
      acc += (row[j] + z[cl[j]]) * w.weight[k];
    }
    out[i] = acc;
  }
}

void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  const std::size_t n = game.cols();
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < w.nnz(); ++k) {
    const std::size_t i = w.index[k];
    const auto row = game.row(i);
    const std::uint32_t* cl = clusters.data() + i * n;
    const double wk = w.weight[k];
    for (std::size_t j = 0; j < n; ++j) out[j] += wk * (row[j] + z[cl[j]]);
  }
}

Extreme argmin(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmin of empty vector");
  Extreme best{0, values[0]};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < best.value) best = {i, values[i]};
  }
  return best;
}

Extreme argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty vector");
  Extreme best{0, values[0]};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best.value) best = {i, values[i]};
  }
  return best;
}

Extreme argmin_minus(std::span<const double> values, std::span<const double> noise) {
  if (values.empty()) throw std::invalid_argument("argmin of empty vector");
  Extreme best{0, values[0] - noise[0]};
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double v = values[i] - noise[i];
    if (v < best.value) best = {i, v};
  }
  return best;
}

Extreme argmax_plus(std::span<const double> values, std::span<const double> noise) {
  if (values.empty()) throw std::invalid_argument("argmax of empty vector");
  Extreme best{0, values[0] + noise[0]};
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double v = values[i] + noise[i];
    if (v > best.value) best = {i, v};
  }
  return best;
}

}  // namespace serial

void row_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  if (game.rows() * w.nnz() >= kParallelWork) return omp::row_values(game, w, out);
  serial::row_values(game, w, out);
}

void col_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  if (game.cols() * w.nnz() >= kParallelWork) return omp::col_values(game, w, out);
  serial::col_values(game, w, out);
}

void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  if (game.rows() * w.nnz() >= kParallelWork) {
    return omp::cluster_row_values(game, clusters, z, w, out);
  }
  serial::cluster_row_values(game, clusters, z, w, out);
}

void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  if (game.cols() * w.nnz() >= kParallelWork) {
    return omp::cluster_col_values(game, clusters, z, w, out);
  }
  serial::cluster_col_values(game, clusters, z, w, out);
}

Extreme argmin(std::span<const double> v) {
  return v.size() >= kParallelWork ? omp::argmin(v) : serial::argmin(v);
}
Extreme argmax(std::span<const double> v) {
  return v.size() >= kParallelWork ? omp::argmax(v) : serial::argmax(v);
}
Extreme argmin_minus(std::span<const double> v, std::span<const double> noise) {
  return v.size() >= kParallelWork ? omp::argmin_minus(v, noise) : serial::argmin_minus(v, noise);
}
Extreme argmax_plus(std::span<const double> v, std::span<const double> noise) {
  return v.size() >= kParallelWork ? omp::argmax_plus(v, noise) : serial::argmax_plus(v, noise);
}

}  // namespace pbro::kernels

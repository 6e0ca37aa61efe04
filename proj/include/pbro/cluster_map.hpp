#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pbro {

// Partition of the cells of an m x n game into K clusters, one per terminal
// state of the structured game that induced the matrix. The mask B_k of a
// cluster is the indicator of cell(i, j) == k.
class ClusterMap {
 public:
  ClusterMap(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> cells,
             std::vector<std::string> labels);

  // Every cell in its own cluster (K = m * n).
  static ClusterMap singletons(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t clusters() const { return labels_.size(); }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::span<const std::uint32_t> cells() const { return cells_; }
  const std::string& label(std::size_t k) const { return labels_.at(k); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::string> labels_;
};

}  // namespace pbro

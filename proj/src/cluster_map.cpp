#include "pbro/cluster_map.hpp"

#include <stdexcept>

namespace pbro {

ClusterMap::ClusterMap(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> cells,
                       std::vector<std::string> labels)
    : rows_(rows), cols_(cols), cells_(std::move(cells)), labels_(std::move(labels)) {
  if (cells_.size() != rows_ * cols_) throw std::invalid_argument("cluster map does not cover every cell");
  std::vector<bool> used(labels_.size(), false);
  for (std::uint32_t c : cells_) {
    if (c >= labels_.size()) throw std::invalid_argument("cluster id out of range");
    used[c] = true;
  }
  for (bool u : used) {
    if (!u) throw std::invalid_argument("cluster map has an empty cluster");
  }
}

ClusterMap ClusterMap::singletons(std::size_t rows, std::size_t cols) {
  std::vector<std::uint32_t> cells(rows * cols);
  std::vector<std::string> labels(rows * cols);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    cells[k] = static_cast<std::uint32_t>(k);
    labels[k] = "cell" + std::to_string(k);
  }
  return ClusterMap(rows, cols, std::move(cells), std::move(labels));
}

}  // namespace pbro

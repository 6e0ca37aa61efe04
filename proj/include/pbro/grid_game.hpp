#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pbro/matrix_game.hpp"
#include "pbro/oracles.hpp"
#include "pbro/perturbation.hpp"
#include "pbro/random_source.hpp"

namespace pbro::games {

// Path-planning game on an n x n node grid. The row player picks a monotone
// (right/up) path from the bottom-left to the top-right node; the column
// player picks one edge whose cost is multiplied by `coefficient`. Entry
// (path, edge) = base cost of the path + (coefficient - 1) * cost(edge) if
// the path uses the edge.
//
// Edges are numbered by scanning nodes row by row from the bottom (y, then
// x), emitting the right edge before the up edge. Paths are numbered in
// lexicographic order of their move strings with right < up.
class GridGame {
 public:
  struct Edge {
    std::size_t x;
    std::size_t y;
    bool up;  // false: (x, y) -> (x + 1, y); true: (x, y) -> (x, y + 1)
  };

  static constexpr std::size_t kMaxSide = 12;

  // Empty `edge_costs` selects the default layered pattern: an edge leaving a
  // node at distance d from the source has layer min(d, 2(n-1) - 1 - d) and
  // costs 1/6, 1/2 or 5/6 for layer 0, 1, >= 2.
  GridGame(std::size_t side, double coefficient, std::vector<double> edge_costs = {});

  std::size_t side() const { return side_; }
  double coefficient() const { return coefficient_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t path_count() const { return path_edges_.size(); }

  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  double cost(std::size_t e) const { return costs_.at(e); }
  std::span<const double> costs() const { return costs_; }
  // Edge index leaving node (x, y) rightward / upward.
  std::size_t right_edge(std::size_t x, std::size_t y) const { return right_[y * side_ + x]; }
  std::size_t up_edge(std::size_t x, std::size_t y) const { return up_[y * side_ + x]; }

  const std::vector<std::size_t>& path_edges(std::size_t p) const { return path_edges_.at(p); }
  double path_base_cost(std::size_t p) const { return path_base_.at(p); }
  bool path_uses(std::size_t p, std::size_t e) const { return membership_[p * edges_.size() + e] != 0; }

  double entry(std::size_t p, std::size_t e) const;
  MatrixGame explicit_matrix() const;

  // Index of the path given by its move string (false = right, true = up).
  std::size_t path_index(const std::vector<bool>& moves) const;

 private:
  std::size_t side_;
  double coefficient_;
  std::vector<Edge> edges_;
  std::vector<double> costs_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> up_;
  std::vector<std::vector<std::size_t>> path_edges_;
  std::vector<double> path_base_;
  std::vector<std::uint8_t> membership_;
  std::vector<std::vector<double>> binom_;
};

inline constexpr std::size_t kExplicitPathLimit = 20000;

struct GridBuild {
  GridGame game;
  std::optional<MatrixGame> matrix;  // present when path_count <= kExplicitPathLimit
};

GridBuild grid_game_build(std::size_t side, double coefficient = 10.0, std::vector<double> edge_costs = {});

// Shortest path under effective edge costs
//   (cost(e) + noise_e) * (total + (coefficient - 1) * w_e) / total,
// noise drawn per call (zero for spec none); with total = 0 the noisy base
// costs are used. Ties resolve to the lexicographically least path.
std::size_t grid_best_response_path(const GridGame& game, const WeightedProfile& edge_weights,
                                    const PerturbationSpec& noise, RandomSource& rng);

// Edge maximizing cost(e) * usage(e), usage under the path weights; least
// index on ties.
std::size_t grid_best_response_edge(const GridGame& game, const WeightedProfile& path_weights);

// Structured oracles for double oracle on the grid game. Perturbations are
// additive noise on the edge costs, drawn per oracle call.
class GridOracles final : public ResponseOracles {
 public:
  explicit GridOracles(const GridGame& game) : game_(game) {}

  std::size_t rows() const override { return game_.path_count(); }
  std::size_t cols() const override { return game_.edge_count(); }
  double entry(std::size_t i, std::size_t j) const override { return game_.entry(i, j); }
  Response respond_row(std::span<const double> edge_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;
  Response respond_col(std::span<const double> path_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;

 private:
  const GridGame& game_;
};

}  // namespace pbro::games

#include "pbro/grid_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbro::games {
namespace {

double default_cost(std::size_t side, std::size_t distance) {
  const std::size_t last = 2 * (side - 1) - 1;
  const std::size_t layer = std::min(distance, last - distance);
  if (layer == 0) return 1.0 / 6.0;
  if (layer == 1) return 1.0 / 2.0;
  return 5.0 / 6.0;
}

struct PathChoice {
  std::size_t index;
  double cost;
};

// Least-cost monotone path; among (near-)ties the lexicographically least
// move string wins.
PathChoice shortest_path(const GridGame& g, std::span<const double> edge_cost,
                         const std::vector<std::vector<double>>& binom) {
  const std::size_t n = g.side();
  std::vector<double> togo(n * n, 0.0);
  const auto at = [n](std::size_t x, std::size_t y) { return y * n + x; };
  for (std::size_t y = n; y-- > 0;) {
    for (std::size_t x = n; x-- > 0;) {
      if (x == n - 1 && y == n - 1) continue;
      double best = INFINITY;
      if (x + 1 < n) best = edge_cost[g.right_edge(x, y)] + togo[at(x + 1, y)];
      if (y + 1 < n) best = std::min(best, edge_cost[g.up_edge(x, y)] + togo[at(x, y + 1)]);
      togo[at(x, y)] = best;
    }
  }

  std::size_t index = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x + 1 < n || y + 1 < n) {
    const std::size_t rights = n - 1 - x;
    const std::size_t ups = n - 1 - y;
    bool go_right = rights > 0;
    if (rights > 0 && ups > 0) {
      const double via_right = edge_cost[g.right_edge(x, y)] + togo[at(x + 1, y)];
      const double via_up = edge_cost[g.up_edge(x, y)] + togo[at(x, y + 1)];
      const double tol = 1e-12 * std::max(1.0, std::abs(togo[at(x, y)]));
      go_right = via_right <= via_up + tol;
      // Every completion that moves right first precedes this one.
      if (!go_right) index += static_cast<std::size_t>(binom[rights - 1 + ups][ups]);
    }
    if (go_right) ++x;
    else ++y;
  }
  return {index, togo[0]};
}

double total_of(std::span<const double> w) {
  double t = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    t += v;
  }
  return t;
}

std::vector<double> noisy_costs(const GridGame& g, const PerturbationSpec& spec, RandomSource& rng) {
  std::vector<double> c(g.costs().begin(), g.costs().end());
  if (spec.active()) {
    std::vector<double> noise(c.size());
    spec.sample(rng, noise);
    for (std::size_t e = 0; e < c.size(); ++e) c[e] += noise[e];
  }
  return c;
}

std::vector<double> effective_costs(const GridGame& g, std::span<const double> base,
                                    std::span<const double> w, bool per_unit) {
  const double total = total_of(w);
  std::vector<double> eff(base.size());
  const double extra = g.coefficient() - 1.0;
  for (std::size_t e = 0; e < base.size(); ++e) {
    if (per_unit) {
      eff[e] = total > 0.0 ? base[e] * (total + extra * w[e]) / total : base[e];
    } else {
      eff[e] = base[e] * (total + extra * w[e]);
    }
  }
  return eff;
}

std::vector<double> edge_usage(const GridGame& g, std::span<const double> path_weights) {
  std::vector<double> usage(g.edge_count(), 0.0);
  for (std::size_t p = 0; p < path_weights.size(); ++p) {
    if (path_weights[p] == 0.0) continue;
    for (std::size_t e : g.path_edges(p)) usage[e] += path_weights[p];
  }
  return usage;
}

std::size_t argmax_weighted(std::span<const double> cost, std::span<const double> usage) {
  std::size_t best = 0;
  double best_value = cost[0] * usage[0];
  for (std::size_t e = 1; e < cost.size(); ++e) {
    const double v = cost[e] * usage[e];
    if (v > best_value) {
      best = e;
      best_value = v;
    }
  }
  return best;
}

std::vector<std::vector<double>> binomials(std::size_t n) {
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (std::size_t k = 1; k <= i; ++k) c[i][k] = c[i - 1][k - 1] + (k < i ? c[i - 1][k] : 0.0);
  }
  return c;
}

}  // namespace

GridGame::GridGame(std::size_t side, double coefficient, std::vector<double> edge_costs)
    : side_(side), coefficient_(coefficient) {
  if (side < 2) throw std::invalid_argument("grid game needs side >= 2");
  if (side > kMaxSide) throw std::invalid_argument("grid game side above " + std::to_string(kMaxSide));
  if (!(coefficient >= 1.0) || !std::isfinite(coefficient)) {
    throw std::invalid_argument("grid coefficient must be >= 1");
  }

  right_.assign(side * side, 0);
  up_.assign(side * side, 0);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      if (x + 1 < side) {
        right_[y * side + x] = edges_.size();
        edges_.push_back({x, y, false});
      }
      if (y + 1 < side) {
        up_[y * side + x] = edges_.size();
        edges_.push_back({x, y, true});
      }
    }
  }

  if (edge_costs.empty()) {
    for (const Edge& e : edges_) costs_.push_back(default_cost(side, e.x + e.y));
  } else {
    if (edge_costs.size() != edges_.size()) throw std::invalid_argument("one cost per grid edge required");
    for (double c : edge_costs) {
      if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("grid edge costs must be positive");
    }
    costs_ = std::move(edge_costs);
  }

  binom_ = binomials(2 * (side - 1));
  // Depth-first enumeration with right before up yields lexicographic order.
  std::vector<std::size_t> current;
  auto walk = [&](auto&& self, std::size_t x, std::size_t y) -> void {
    if (x + 1 == side && y + 1 == side) {
      path_edges_.push_back(current);
      return;
    }
    if (x + 1 < side) {
      current.push_back(right_edge(x, y));
      self(self, x + 1, y);
      current.pop_back();
    }
    if (y + 1 < side) {
      current.push_back(up_edge(x, y));
      self(self, x, y + 1);
      current.pop_back();
    }
  };
  walk(walk, 0, 0);

  membership_.assign(path_edges_.size() * edges_.size(), 0);
  path_base_.reserve(path_edges_.size());
  for (std::size_t p = 0; p < path_edges_.size(); ++p) {
    double base = 0.0;
    for (std::size_t e : path_edges_[p]) {
      base += costs_[e];
      membership_[p * edges_.size() + e] = 1;
    }
    path_base_.push_back(base);
  }
}

double GridGame::entry(std::size_t p, std::size_t e) const {
  const double v = path_base_.at(p);
  return path_uses(p, e) ? v + (coefficient_ - 1.0) * costs_[e] : v;
}

MatrixGame GridGame::explicit_matrix() const {
  std::vector<double> data;
  data.reserve(path_count() * edge_count());
  for (std::size_t p = 0; p < path_count(); ++p) {
    for (std::size_t e = 0; e < edge_count(); ++e) data.push_back(entry(p, e));
  }
  return MatrixGame(path_count(), edge_count(), std::move(data));
}

std::size_t GridGame::path_index(const std::vector<bool>& moves) const {
  if (moves.size() != 2 * (side_ - 1)) throw std::invalid_argument("path has the wrong number of moves");
  std::size_t rights = side_ - 1;
  std::size_t ups = side_ - 1;
  std::size_t index = 0;
  for (bool up : moves) {
    if (up) {
      if (ups == 0) throw std::invalid_argument("path leaves the grid");
      if (rights > 0) index += static_cast<std::size_t>(binom_[rights - 1 + ups][ups]);
      --ups;
    } else {
      if (rights == 0) throw std::invalid_argument("path leaves the grid");
      --rights;
    }
  }
  return index;
}

GridBuild grid_game_build(std::size_t side, double coefficient, std::vector<double> edge_costs) {
  GridGame game(side, coefficient, std::move(edge_costs));
  std::optional<MatrixGame> matrix;
  if (game.path_count() <= kExplicitPathLimit) matrix = game.explicit_matrix();
  return {std::move(game), std::move(matrix)};
}

std::size_t grid_best_response_path(const GridGame& game, const WeightedProfile& edge_weights,
                                    const PerturbationSpec& noise, RandomSource& rng) {
  if (edge_weights.size() != game.edge_count()) throw std::invalid_argument("edge weights dimension mismatch");
  const auto base = noisy_costs(game, noise, rng);
  const auto eff = effective_costs(game, base, edge_weights.counts(), true);
  return shortest_path(game, eff, binomials(2 * (game.side() - 1))).index;
}

std::size_t grid_best_response_edge(const GridGame& game, const WeightedProfile& path_weights) {
  if (path_weights.size() != game.path_count()) throw std::invalid_argument("path weights dimension mismatch");
  if (game.coefficient() == 1.0) return 0;  // every column is identical
  const auto usage = edge_usage(game, path_weights.counts());
  return argmax_weighted(game.costs(), usage);
}

Response GridOracles::respond_row(std::span<const double> edge_weights, const PerturbationSpec& spec,
                                  RandomSource& rng) const {
  if (edge_weights.size() != game_.edge_count()) throw std::invalid_argument("edge weights dimension mismatch");
  const auto binom = binomials(2 * (game_.side() - 1));
  const auto exact = shortest_path(game_, effective_costs(game_, game_.costs(), edge_weights, false), binom);
  if (!spec.active()) return {exact.index, exact.cost};
  const auto base = noisy_costs(game_, spec, rng);
  const auto chosen = shortest_path(game_, effective_costs(game_, base, edge_weights, true), binom);
  return {chosen.index, exact.cost};
}

Response GridOracles::respond_col(std::span<const double> path_weights, const PerturbationSpec& spec,
                                  RandomSource& rng) const {
  if (path_weights.size() != game_.path_count()) throw std::invalid_argument("path weights dimension mismatch");
  const auto usage = edge_usage(game_, path_weights);
  double base_term = 0.0;
  for (std::size_t p = 0; p < path_weights.size(); ++p) {
    if (path_weights[p] != 0.0) base_term += path_weights[p] * game_.path_base_cost(p);
  }
  const double extra = game_.coefficient() - 1.0;
  const std::size_t exact = extra > 0.0 ? argmax_weighted(game_.costs(), usage) : 0;
  const double value = base_term + extra * game_.cost(exact) * usage[exact];
  if (!spec.active() || extra == 0.0) return {exact, value};
  const auto noisy = noisy_costs(game_, spec, rng);
  return {argmax_weighted(noisy, usage), value};
}

}  // namespace pbro::games

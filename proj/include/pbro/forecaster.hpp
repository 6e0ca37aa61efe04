#pragma once

#include <cstddef>
#include <vector>

#include "pbro/matrix_game.hpp"
#include "pbro/random_source.hpp"
#include "pbro/solvers.hpp"

namespace pbro {

// Randomized exponentially weighted forecaster against the opponent's
// history `opponent_counts`: softmax(-eta M c) for the row player and
// softmax(eta c^T M) for the column player.
MixedStrategy rewf_distribution(const MatrixGame& game, const WeightedProfile& opponent_counts,
                                double eta, Side side);

struct PlayerRegret {
  double cumulative_loss = 0.0;
  double best_fixed_loss = 0.0;
  double regret = 0.0;
};

struct RegretTrace {
  std::size_t horizon = 0;
  std::vector<std::size_t> row_actions;
  std::vector<std::size_t> col_actions;
  PlayerRegret row;
  // Measured on the column player's loss matrix 1 - M^T.
  PlayerRegret col;
};

// Both players run the forecaster against each other for `horizon` rounds.
// Requires entries in [0, 1].
RegretTrace run_rewf_selfplay(const MatrixGame& game, std::size_t horizon, double eta, RandomSource rng);

// Recomputes both players' regrets from the recorded actions alone.
RegretTrace recompute_regret(const MatrixGame& game, const std::vector<std::size_t>& row_actions,
                             const std::vector<std::size_t>& col_actions);

// High-probability regret bound ln(actions)/eta + T eta / 8 + sqrt(T/2 ln(1/delta)).
double rewf_regret_bound(std::size_t actions, std::size_t horizon, double eta, double delta);

// Runs stochastic FP with Gumbel(0, beta) noise for exactly T rounds from
// empty play counts, checks the averaged pair, and restarts until it is an
// eps-equilibrium. beta and T come from sfp_theory_params(n, eps) with n the
// larger side; a game with more rows than columns is solved through the
// role-swapped game 1 - M^T. Entries must lie in [0, 1].
SolveResult sfp_restart_protocol(const MatrixGame& game, double eps, RandomSource rng,
                                 std::size_t max_restarts);

}  // namespace pbro

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pbro/matrix_game.hpp"
#include "pbro/oracles.hpp"
#include "pbro/perturbation.hpp"
#include "pbro/random_source.hpp"

namespace pbro {

struct SolverConfig {
  double eps = 0.1;
  // Cap on loop bodies; 0 selects the algorithm default
  // (50 (m + n) for the fictitious-play family, m + n + 1 for double oracle).
  std::size_t max_iterations = 0;
  std::size_t init_row = 0;
  std::size_t init_col = 0;
  PerturbationSpec row_perturbation;
  PerturbationSpec col_perturbation;
  RandomSource rng;
  bool record_trace = false;
  // Anticipatory FP: perturb the two anticipation calls as well as the two
  // response calls.
  bool perturb_anticipation = true;
};

// Per-iteration bounds. For the fictitious-play family lb/ub are on raw play
// counts (divide by t for per-play values); for double oracle they are the
// values against the restricted equilibrium.
struct TracePoint {
  std::size_t t;
  double lb;
  double ub;
  std::size_t row_support = 0;
  std::size_t col_support = 0;
};

struct SolveResult {
  MixedStrategy row;
  MixedStrategy col;
  // Loop bodies executed (subgame solves for double oracle, rounds for the
  // restart protocol summed over attempts).
  std::size_t iterations = 0;
  bool terminated = false;
  // ub - lb at exit, per play.
  double final_gap = 0.0;
  std::vector<TracePoint> trace;
  std::size_t attempts = 1;
};

// Fictitious play; with a perturbation configured this is stochastic FP.
SolveResult run_fictitious_play(const MatrixGame& game, const SolverConfig& cfg);

// Anticipatory FP (four oracle calls per iteration); perturbed: SAFP.
SolveResult run_anticipatory_fp(const MatrixGame& game, const SolverConfig& cfg);

// Double oracle; with a perturbation configured this is stochastic DO.
SolveResult run_double_oracle(const MatrixGame& game, const SolverConfig& cfg);
SolveResult run_double_oracle(const ResponseOracles& oracles, const SolverConfig& cfg);

// Stream used by the oracle call `call` of iteration t on one side.
RandomSource oracle_stream(const RandomSource& run, std::size_t t, Side side, std::size_t call = 0);

}  // namespace pbro

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pbro/cluster_map.hpp"
#include "pbro/matrix_game.hpp"

namespace pbro::games {

// n-bit games in which both players commit to a bit string. The Stochastic
// variant is a chain that ends at the first round where the bits differ;
// its matrix is L(2^n). The POSG variant adds up/down branches whose
// matrix is U^T(2^n). Both have 2n + 1 terminal states.
struct BitGameSpec {
  enum class Variant { kStochastic, kPosg };
  Variant variant;
  std::size_t bits;
};

struct BitGameOutcome {
  std::string terminal;  // e.g. "+1@2", "-2", "0"
  double payoff;         // column player's reward
};

// Walks the state machine over the action pairs (x_d, y_d), d = 1..n.
// Strings consist of '0' and '1'; x is the row player's.
BitGameOutcome bitgame_simulate(const BitGameSpec& spec, std::string_view x, std::string_view y);

// Binary encoding (most significant bit first) of pure strategy `index`.
std::string bitgame_strategy(std::size_t index, std::size_t bits);

struct BitGameMatrix {
  MatrixGame game;
  ClusterMap clusters;  // one cluster per terminal state
};

inline constexpr std::size_t kMaxDenseBits = 13;

// Dense matrix and terminal-state clustering for bits <= kMaxDenseBits.
BitGameMatrix bitgame_build(const BitGameSpec& spec);

}  // namespace pbro::games

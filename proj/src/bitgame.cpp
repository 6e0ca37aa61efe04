#include "pbro/bitgame.hpp"

#include <stdexcept>

namespace pbro::games {
namespace {

struct Terminal {
  std::uint32_t code;
  double payoff;
};

// Terminal codes. Stochastic: "+1@d" -> d-1, "-1@d" -> n+d-1, "0" -> 2n.
// POSG: "+2" -> 0, "-2" -> 1, "0" -> 2, "+1@r" -> r+1, "-1@r" -> n+r
// (r = 2..n is the round in which the branch ends).
Terminal walk(const BitGameSpec& spec, std::uint64_t x, std::uint64_t y) {
  const std::size_t n = spec.bits;
  const auto bit = [n](std::uint64_t v, std::size_t round) { return (v >> (n - round)) & 1u; };
  const auto u32 = [](std::size_t v) { return static_cast<std::uint32_t>(v); };

  if (spec.variant == BitGameSpec::Variant::kStochastic) {
    for (std::size_t d = 1; d <= n; ++d) {
      const auto a = bit(x, d);
      const auto b = bit(y, d);
      if (a == b) continue;
      if (a == 0) return {u32(d - 1), 1.0};
      return {u32(n + d - 1), -1.0};
    }
    return {u32(2 * n), 0.0};
  }

  enum class State { kChain, kUp, kDown } state = State::kChain;
  for (std::size_t d = 1; d <= n; ++d) {
    const auto a = bit(x, d);
    const auto b = bit(y, d);
    switch (state) {
      case State::kChain:
        if (a == b) {
          if (d == n) return {2, 0.0};
        } else if (a == 0) {
          if (d == n) return {0, 2.0};
          state = State::kUp;
        } else {
          if (d == n) return {1, -2.0};
          state = State::kDown;
        }
        break;
      case State::kUp:
        if (a == 1 && b == 0) {
          if (d == n) return {0, 2.0};
        } else {
          return {u32(d + 1), 1.0};
        }
        break;
      case State::kDown:
        if (a == 0 && b == 1) {
          if (d == n) return {1, -2.0};
        } else {
          return {u32(n + d), -1.0};
        }
        break;
    }
  }
  throw std::logic_error("bit game walk did not reach a terminal");
}

std::string terminal_label(const BitGameSpec& spec, std::uint32_t code) {
  const std::size_t n = spec.bits;
  if (spec.variant == BitGameSpec::Variant::kStochastic) {
    if (code < n) return "+1@" + std::to_string(code + 1);
    if (code < 2 * n) return "-1@" + std::to_string(code - n + 1);
    return "0";
  }
  if (code == 0) return "+2";
  if (code == 1) return "-2";
  if (code == 2) return "0";
  if (code < n + 2) return "+1@" + std::to_string(code - 1);
  return "-1@" + std::to_string(code - n);
}

std::uint64_t parse_bits(std::string_view s) {
  std::uint64_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit strings may only contain '0' and '1'");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

void check_spec(const BitGameSpec& spec) {
  if (spec.bits == 0) throw std::invalid_argument("bit game needs at least one bit");
  if (spec.bits > 62) throw std::invalid_argument("bit game too large");
}

}  // namespace

BitGameOutcome bitgame_simulate(const BitGameSpec& spec, std::string_view x, std::string_view y) {
  check_spec(spec);
  if (x.size() != spec.bits || y.size() != spec.bits) {
    throw std::invalid_argument("bit strings must have length " + std::to_string(spec.bits));
  }
  const Terminal t = walk(spec, parse_bits(x), parse_bits(y));
  return {terminal_label(spec, t.code), t.payoff};
}

std::string bitgame_strategy(std::size_t index, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t k = 0; k < bits; ++k) {
    if ((index >> (bits - 1 - k)) & 1u) s[k] = '1';
  }
  return s;
}

BitGameMatrix bitgame_build(const BitGameSpec& spec) {
  check_spec(spec);
  if (spec.bits > kMaxDenseBits) {
    throw std::invalid_argument("bit game with " + std::to_string(spec.bits) + " bits exceeds the dense limit");
  }
  const std::size_t dim = std::size_t{1} << spec.bits;
  std::vector<double> payoff(dim * dim);
  std::vector<std::uint32_t> cells(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Terminal t = walk(spec, i, j);
      payoff[i * dim + j] = t.payoff;
      cells[i * dim + j] = t.code;
    }
  }
  std::vector<std::string> labels(2 * spec.bits + 1);
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = terminal_label(spec, static_cast<std::uint32_t>(k));
  return {MatrixGame(dim, dim, std::move(payoff)), ClusterMap(dim, dim, std::move(cells), std::move(labels))};
}

}  // namespace pbro::games

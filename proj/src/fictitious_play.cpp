#include <stdexcept>
#include <vector>

#include "pbro/kernels.hpp"
#include "pbro/solvers.hpp"

namespace pbro {
namespace {

void check_config(const MatrixGame& game, const SolverConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (cfg.init_row >= game.rows() || cfg.init_col >= game.cols()) {
    throw std::invalid_argument("initial strategy out of range");
  }
}

// Play counts with running products M q and p^T M, updated by one column and
// one row per iteration.
class PlayState {
 public:
  PlayState(const MatrixGame& game, std::size_t k, std::size_t l)
      : game_(game), p_(game.rows(), 0.0), q_(game.cols(), 0.0),
        row_sums_(game.rows()), col_sums_(game.cols()) {
    add_row_play(k);
    add_col_play(l);
  }

  void add_row_play(std::size_t i) {
    p_[i] += 1.0;
    const auto row = game_.row(i);
    for (std::size_t j = 0; j < col_sums_.size(); ++j) col_sums_[j] += row[j];
  }

  void add_col_play(std::size_t j) {
    q_[j] += 1.0;
    for (std::size_t i = 0; i < row_sums_.size(); ++i) row_sums_[i] += game_(i, j);
  }

  double lb() const { return kernels::argmin(row_sums_).value; }
  double ub() const { return kernels::argmax(col_sums_).value; }

  const std::vector<double>& row_sums() const { return row_sums_; }
  const std::vector<double>& col_sums() const { return col_sums_; }

  MixedStrategy average_row(double t) const { return average(p_, t); }
  MixedStrategy average_col(double t) const { return average(q_, t); }

 private:
  static MixedStrategy average(const std::vector<double>& counts, double t) {
    std::vector<double> w(counts.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = counts[i] / t;
    return MixedStrategy(std::move(w));
  }

  const MatrixGame& game_;
  std::vector<double> p_;
  std::vector<double> q_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
};

std::size_t pick_min(std::span<const double> values, const PerturbationSpec& spec, RandomSource rng,
                     std::vector<double>& noise) {
  if (!spec.active()) return kernels::argmin(values).index;
  noise.resize(values.size());
  spec.sample(rng, noise);
  return kernels::argmin_minus(values, noise).index;
}

std::size_t pick_max(std::span<const double> values, const PerturbationSpec& spec, RandomSource rng,
                     std::vector<double>& noise) {
  if (!spec.active()) return kernels::argmax(values).index;
  noise.resize(values.size());
  spec.sample(rng, noise);
  return kernels::argmax_plus(values, noise).index;
}

std::size_t default_cap(const MatrixGame& game, const SolverConfig& cfg) {
  return cfg.max_iterations ? cfg.max_iterations : 50 * (game.rows() + game.cols());
}

// Shared loop of FP and AFP; `step` chooses the pair (i, j) of iteration t.
template <typename Step>
SolveResult run_fp_loop(const MatrixGame& game, const SolverConfig& cfg, Step step) {
  check_config(game, cfg);
  PlayState state(game, cfg.init_row, cfg.init_col);
  const std::size_t cap = default_cap(game, cfg);

  std::size_t t = 1;
  double lb = state.lb();
  double ub = state.ub();
  std::vector<TracePoint> trace;
  if (cfg.record_trace) trace.push_back({t, lb, ub});

  std::size_t bodies = 0;
  while (ub - lb > static_cast<double>(t) * cfg.eps && bodies < cap) {
    ++t;
    ++bodies;
    const auto [i, j] = step(state, t);
    state.add_row_play(i);
    state.add_col_play(j);
    lb = state.lb();
    ub = state.ub();
    if (cfg.record_trace) trace.push_back({t, lb, ub});
  }

  const double td = static_cast<double>(t);
  return SolveResult{state.average_row(td), state.average_col(td), bodies,
                     ub - lb <= td * cfg.eps, (ub - lb) / td, std::move(trace), 1};
}

}  // namespace

RandomSource oracle_stream(const RandomSource& run, std::size_t t, Side side, std::size_t call) {
  return run.derive(t).derive(static_cast<std::uint64_t>(side) + 4 * call);
}

SolveResult run_fictitious_play(const MatrixGame& game, const SolverConfig& cfg) {
  std::vector<double> noise;
  return run_fp_loop(game, cfg, [&](const PlayState& s, std::size_t t) {
    const std::size_t i = pick_min(s.row_sums(), cfg.row_perturbation, oracle_stream(cfg.rng, t, Side::kRow), noise);
    const std::size_t j = pick_max(s.col_sums(), cfg.col_perturbation, oracle_stream(cfg.rng, t, Side::kCol), noise);
    return std::pair{i, j};
  });
}

SolveResult run_anticipatory_fp(const MatrixGame& game, const SolverConfig& cfg) {
  std::vector<double> noise;
  std::vector<double> shifted_rows(game.rows());
  std::vector<double> shifted_cols(game.cols());
  const PerturbationSpec none;
  const PerturbationSpec& row_anticipation = cfg.perturb_anticipation ? cfg.row_perturbation : none;
  const PerturbationSpec& col_anticipation = cfg.perturb_anticipation ? cfg.col_perturbation : none;

  return run_fp_loop(game, cfg, [&](const PlayState& s, std::size_t t) {
    // Anticipate the opponent's next response...
    const std::size_t i_ant = pick_min(s.row_sums(), row_anticipation, oracle_stream(cfg.rng, t, Side::kRow, 0), noise);
    const std::size_t j_ant = pick_max(s.col_sums(), col_anticipation, oracle_stream(cfg.rng, t, Side::kCol, 0), noise);
    // ...and respond to the profile that includes it.
    for (std::size_t r = 0; r < shifted_rows.size(); ++r) shifted_rows[r] = s.row_sums()[r] + game(r, j_ant);
    const auto ant_row = game.row(i_ant);
    for (std::size_t c = 0; c < shifted_cols.size(); ++c) shifted_cols[c] = s.col_sums()[c] + ant_row[c];
    const std::size_t i = pick_min(shifted_rows, cfg.row_perturbation, oracle_stream(cfg.rng, t, Side::kRow, 1), noise);
    const std::size_t j = pick_max(shifted_cols, cfg.col_perturbation, oracle_stream(cfg.rng, t, Side::kCol, 1), noise);
    return std::pair{i, j};
  });
}

}  // namespace pbro

#include "pbro/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbro/kernels.hpp"
#include "pbro/perturbation.hpp"

namespace pbro {
namespace {

void require_unit_entries(const MatrixGame& game) {
  if (game.min_entry() < 0.0 || game.max_entry() > 1.0) {
    throw std::invalid_argument("game entries must lie in [0, 1]");
  }
}

std::size_t sample_index(const MixedStrategy& dist, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap above the last partial sum.
  for (std::size_t i = dist.size(); i-- > 0;) {
    if (dist[i] > 0.0) return i;
  }
  return dist.size() - 1;
}

MixedStrategy scaled_softmax(const std::vector<double>& sums, double factor) {
  std::vector<double> x(sums.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = factor * sums[i];
  return softmax(x);
}

}  // namespace

MixedStrategy rewf_distribution(const MatrixGame& game, const WeightedProfile& opponent_counts,
                                double eta, Side side) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const auto sparse = kernels::SparseWeights::from_dense(opponent_counts.counts());
  if (side == Side::kRow) {
    if (opponent_counts.size() != game.cols()) throw std::invalid_argument("column history dimension mismatch");
    std::vector<double> sums(game.rows());
    kernels::row_values(game, sparse, sums);
    return scaled_softmax(sums, -eta);
  }
  if (opponent_counts.size() != game.rows()) throw std::invalid_argument("row history dimension mismatch");
  std::vector<double> sums(game.cols());
  kernels::col_values(game, sparse, sums);
  return scaled_softmax(sums, eta);
}

RegretTrace recompute_regret(const MatrixGame& game, const std::vector<std::size_t>& row_actions,
                             const std::vector<std::size_t>& col_actions) {
  if (row_actions.size() != col_actions.size()) throw std::invalid_argument("action histories differ in length");
  RegretTrace out;
  out.horizon = row_actions.size();
  out.row_actions = row_actions;
  out.col_actions = col_actions;

  std::vector<double> row_totals(game.rows(), 0.0);  // sum_t M(i, j_t)
  std::vector<double> col_totals(game.cols(), 0.0);  // sum_t M(i_t, j)
  double realized = 0.0;
  for (std::size_t t = 0; t < out.horizon; ++t) {
    const std::size_t i = row_actions[t];
    const std::size_t j = col_actions[t];
    realized += game(i, j);
    for (std::size_t r = 0; r < game.rows(); ++r) row_totals[r] += game(r, j);
    const auto row = game.row(i);
    for (std::size_t c = 0; c < game.cols(); ++c) col_totals[c] += row[c];
  }
  const double horizon = static_cast<double>(out.horizon);
  out.row.cumulative_loss = realized;
  out.row.best_fixed_loss = *std::min_element(row_totals.begin(), row_totals.end());
  out.row.regret = out.row.cumulative_loss - out.row.best_fixed_loss;
  out.col.cumulative_loss = horizon - realized;
  out.col.best_fixed_loss = horizon - *std::max_element(col_totals.begin(), col_totals.end());
  out.col.regret = out.col.cumulative_loss - out.col.best_fixed_loss;
  return out;
}

RegretTrace run_rewf_selfplay(const MatrixGame& game, std::size_t horizon, double eta, RandomSource rng) {
  require_unit_entries(game);
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");

  std::vector<double> row_sums(game.rows(), 0.0);  // M times the column history
  std::vector<double> col_sums(game.cols(), 0.0);  // row history times M
  std::vector<std::size_t> row_actions;
  std::vector<std::size_t> col_actions;
  row_actions.reserve(horizon);
  col_actions.reserve(horizon);

  for (std::size_t t = 1; t <= horizon; ++t) {
    const MixedStrategy row_dist = scaled_softmax(row_sums, -eta);
    const MixedStrategy col_dist = scaled_softmax(col_sums, eta);
    const std::size_t i = sample_index(row_dist, oracle_stream(rng, t, Side::kRow).next_unit());
    const std::size_t j = sample_index(col_dist, oracle_stream(rng, t, Side::kCol).next_unit());
    row_actions.push_back(i);
    col_actions.push_back(j);
    for (std::size_t r = 0; r < game.rows(); ++r) row_sums[r] += game(r, j);
    const auto row = game.row(i);
    for (std::size_t c = 0; c < game.cols(); ++c) col_sums[c] += row[c];
  }
  return recompute_regret(game, row_actions, col_actions);
}

double rewf_regret_bound(std::size_t actions, std::size_t horizon, double eta, double delta) {
  const double t = static_cast<double>(horizon);
  return std::log(static_cast<double>(actions)) / eta + t * eta / 8.0 + std::sqrt(t / 2.0 * std::log(1.0 / delta));
}

SolveResult sfp_restart_protocol(const MatrixGame& input, double eps, RandomSource rng,
                                 std::size_t max_restarts) {
  require_unit_entries(input);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (max_restarts == 0) throw std::invalid_argument("max_restarts must be at least 1");

  // Row player of 1 - M^T is the column player of M.
  const bool swapped = input.rows() > input.cols();
  const MatrixGame game = [&] {
    if (!swapped) return input;
    MatrixGame t = input.transposed();
    std::vector<double> data(t.data().begin(), t.data().end());
    for (double& v : data) v = 1.0 - v;
    return MatrixGame(t.rows(), t.cols(), std::move(data));
  }();

  const SFPTheoryParams params = sfp_theory_params(std::max<double>(2.0, static_cast<double>(game.cols())), eps);
  const auto noise_spec = PerturbationSpec::gumbel(0.0, params.beta);
  const auto horizon = static_cast<std::size_t>(params.horizon);
  const double td = static_cast<double>(horizon);

  std::vector<double> row_noise(game.rows());
  std::vector<double> col_noise(game.cols());
  std::size_t rounds = 0;
  for (std::size_t attempt = 1; attempt <= max_restarts; ++attempt) {
    const RandomSource run = rng.derive(attempt);
    std::vector<double> p(game.rows(), 0.0);
    std::vector<double> q(game.cols(), 0.0);
    std::vector<double> row_sums(game.rows(), 0.0);
    std::vector<double> col_sums(game.cols(), 0.0);
    for (std::size_t t = 1; t <= horizon; ++t) {
      RandomSource row_rng = oracle_stream(run, t, Side::kRow);
      RandomSource col_rng = oracle_stream(run, t, Side::kCol);
      noise_spec.sample(row_rng, row_noise);
      noise_spec.sample(col_rng, col_noise);
      const std::size_t i = kernels::argmin_minus(row_sums, row_noise).index;
      const std::size_t j = kernels::argmax_plus(col_sums, col_noise).index;
      p[i] += 1.0;
      q[j] += 1.0;
      for (std::size_t r = 0; r < game.rows(); ++r) row_sums[r] += game(r, j);
      const auto row = game.row(i);
      for (std::size_t c = 0; c < game.cols(); ++c) col_sums[c] += row[c];
    }
    rounds += horizon;

    for (double& v : p) v /= td;
    for (double& v : q) v /= td;
    MixedStrategy row_avg(std::move(p));
    MixedStrategy col_avg(std::move(q));
    const double gap = exploitability(game, row_avg, col_avg);
    const bool success = gap <= eps;
    if (success || attempt == max_restarts) {
      if (swapped) std::swap(row_avg, col_avg);
      return SolveResult{std::move(row_avg), std::move(col_avg), rounds, success, gap, {}, attempt};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace pbro

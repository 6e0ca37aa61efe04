#include <stdexcept>

#include "pbro/nash.hpp"
#include "pbro/solvers.hpp"

namespace pbro {

SolveResult run_double_oracle(const MatrixGame& game, const SolverConfig& cfg) {
  return run_double_oracle(MatrixOracles(game), cfg);
}

SolveResult run_double_oracle(const ResponseOracles& oracles, const SolverConfig& cfg) {
  const std::size_t m = oracles.rows();
  const std::size_t n = oracles.cols();
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (cfg.init_row >= m || cfg.init_col >= n) throw std::invalid_argument("initial strategy out of range");
  const std::size_t cap = cfg.max_iterations ? cfg.max_iterations : m + n + 1;

  SupportSet rows(m);
  SupportSet cols(n);
  rows.insert(cfg.init_row);
  cols.insert(cfg.init_col);
  MixedStrategy p = MixedStrategy::pure(m, cfg.init_row);
  MixedStrategy q = MixedStrategy::pure(n, cfg.init_col);

  const PerturbationSpec exact;
  RandomSource unused = cfg.rng;
  double lb = oracles.respond_row(q.weights(), exact, unused).value;
  double ub = oracles.respond_col(p.weights(), exact, unused).value;

  std::vector<TracePoint> trace;
  if (cfg.record_trace) trace.push_back({1, lb, ub, rows.size(), cols.size()});

  std::size_t t = 1;
  std::size_t bodies = 0;
  while (ub - lb > cfg.eps && bodies < cap) {
    ++t;
    ++bodies;
    const Subgame sub = oracles.restrict(rows, cols);
    const NashSolution sol = nash_lp(sub.game);
    p = embed(sol.row, sub.row_ids, m);
    q = embed(sol.col, sub.col_ids, n);

    RandomSource row_rng = oracle_stream(cfg.rng, t, Side::kRow);
    const Response row_reply = oracles.respond_row(q.weights(), cfg.row_perturbation, row_rng);
    rows.insert(row_reply.index);
    RandomSource col_rng = oracle_stream(cfg.rng, t, Side::kCol);
    const Response col_reply = oracles.respond_col(p.weights(), cfg.col_perturbation, col_rng);
    cols.insert(col_reply.index);

    lb = row_reply.value;
    ub = col_reply.value;
    if (cfg.record_trace) trace.push_back({t, lb, ub, rows.size(), cols.size()});
  }

  return SolveResult{std::move(p), std::move(q), bodies, ub - lb <= cfg.eps, ub - lb, std::move(trace), 1};
}

}  // namespace pbro

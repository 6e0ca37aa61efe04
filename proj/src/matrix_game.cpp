#include "pbro/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbro/kernels.hpp"

namespace pbro {
namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(got) +
                                " does not match " + std::to_string(want));
  }
}

}  // namespace

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff)
    : rows_(rows), cols_(cols), payoff_(std::move(payoff)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix game needs at least one row and column");
  if (payoff_.size() != rows_ * cols_) throw std::invalid_argument("payoff size does not match shape");
  for (double v : payoff_) {
    if (!std::isfinite(v)) throw std::invalid_argument("payoff entries must be finite");
  }
}

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, double fill)
    : MatrixGame(rows, cols, std::vector<double>(rows * cols, fill)) {}

MatrixGame MatrixGame::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix game needs at least one row");
  const std::size_t n = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("ragged payoff rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return MatrixGame(rows.size(), n, std::move(data));
}

MatrixGame MatrixGame::transposed() const {
  std::vector<double> t(payoff_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = payoff_[i * cols_ + j];
  }
  return MatrixGame(cols_, rows_, std::move(t));
}

double MatrixGame::min_entry() const { return *std::min_element(payoff_.begin(), payoff_.end()); }
double MatrixGame::max_entry() const { return *std::max_element(payoff_.begin(), payoff_.end()); }

MixedStrategy::MixedStrategy(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("mixed strategy must be non-empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("mixed strategy weights must be finite and >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("mixed strategy weights sum to " + std::to_string(sum));
  }
}

MixedStrategy MixedStrategy::pure(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("pure strategy index out of range");
  std::vector<double> w(dim, 0.0);
  w[index] = 1.0;
  return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::uniform(std::size_t dim) {
  return MixedStrategy(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

std::vector<std::size_t> MixedStrategy::support(double threshold) const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > threshold) s.push_back(i);
  }
  return s;
}

WeightedProfile::WeightedProfile(std::size_t dim) : counts_(dim, 0.0) {}

WeightedProfile::WeightedProfile(std::vector<double> counts) : counts_(std::move(counts)) {
  for (double c : counts_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("profile counts must be finite and >= 0");
    total_ += c;
  }
}

WeightedProfile::WeightedProfile(const MixedStrategy& strategy)
    : WeightedProfile(std::vector<double>(strategy.weights().begin(), strategy.weights().end())) {}

void WeightedProfile::add(std::size_t index, double amount) {
  counts_.at(index) += amount;
  total_ += amount;
}

MixedStrategy WeightedProfile::normalized() const {
  if (!(total_ > 0.0)) throw std::invalid_argument("cannot normalize an empty profile");
  std::vector<double> w(counts_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = counts_[i] / total_;
  return MixedStrategy(std::move(w));
}

SupportSet::SupportSet(std::size_t bound, std::vector<std::size_t> indices) : bound_(bound) {
  for (std::size_t i : indices) {
    if (!insert(i)) throw std::invalid_argument("duplicate index in support set");
  }
}

bool SupportSet::insert(std::size_t index) {
  if (index >= bound_) throw std::invalid_argument("support index out of range");
  if (member_.empty()) member_.assign(bound_, false);
  if (member_[index]) return false;
  member_[index] = true;
  order_.push_back(index);
  return true;
}

bool SupportSet::contains(std::size_t index) const {
  return index < member_.size() && member_[index];
}

double value(const MatrixGame& game, const MixedStrategy& p, const MixedStrategy& q) {
  require_dim(p.size(), game.rows(), "row strategy");
  require_dim(q.size(), game.cols(), "column strategy");
  double total = 0.0;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (p[i] == 0.0) continue;
    const auto row = game.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < game.cols(); ++j) acc += row[j] * q[j];
    total += p[i] * acc;
  }
  return total;
}

BestResponse best_response_row(const MatrixGame& game, const WeightedProfile& q) {
  require_dim(q.size(), game.cols(), "column profile");
  std::vector<double> values(game.rows());
  kernels::row_values(game, kernels::SparseWeights::from_dense(q.counts()), values);
  const auto best = kernels::argmin(values);
  return {best.index, best.value};
}

BestResponse best_response_col(const MatrixGame& game, const WeightedProfile& p) {
  require_dim(p.size(), game.rows(), "row profile");
  std::vector<double> values(game.cols());
  kernels::col_values(game, kernels::SparseWeights::from_dense(p.counts()), values);
  const auto best = kernels::argmax(values);
  return {best.index, best.value};
}

double exploitability(const MatrixGame& game, const MixedStrategy& p, const MixedStrategy& q) {
  require_dim(p.size(), game.rows(), "row strategy");
  require_dim(q.size(), game.cols(), "column strategy");
  return best_response_col(game, p).value - best_response_row(game, q).value;
}

NormalizedGame normalize_unit(const MatrixGame& game) {
  const double lo = game.min_entry();
  const double hi = game.max_entry();
  if (!(hi > lo)) {
    return {MatrixGame(game.rows(), game.cols(), 0.0), AffineMap{1.0, lo}};
  }
  const double scale = 1.0 / (hi - lo);
  std::vector<double> data(game.data().begin(), game.data().end());
  for (double& v : data) v = (v - lo) * scale;
  // Pin the extremes so rounding never leaves [0, 1].
  for (double& v : data) v = std::clamp(v, 0.0, 1.0);
  return {MatrixGame(game.rows(), game.cols(), std::move(data)), AffineMap{scale, lo}};
}

Subgame submatrix(const MatrixGame& game, const SupportSet& rows, const SupportSet& cols) {
  if (rows.empty() || cols.empty()) throw std::invalid_argument("submatrix needs non-empty index sets");
  for (std::size_t i : rows.indices()) {
    if (i >= game.rows()) throw std::invalid_argument("submatrix row index out of range");
  }
  for (std::size_t j : cols.indices()) {
    if (j >= game.cols()) throw std::invalid_argument("submatrix column index out of range");
  }
  std::vector<double> data;
  data.reserve(rows.size() * cols.size());
  for (std::size_t i : rows.indices()) {
    const auto row = game.row(i);
    for (std::size_t j : cols.indices()) data.push_back(row[j]);
  }
  return {MatrixGame(rows.size(), cols.size(), std::move(data)), rows.indices(), cols.indices()};
}

MixedStrategy embed(const MixedStrategy& local, const std::vector<std::size_t>& ids, std::size_t dim) {
  require_dim(local.size(), ids.size(), "embedded strategy");
  std::vector<double> w(dim, 0.0);
  for (std::size_t k = 0; k < ids.size(); ++k) w.at(ids[k]) = local[k];
  return MixedStrategy(std::move(w));
}

}  // namespace pbro

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pbro {

// Dense two-player zero-sum game. Entry (i, j) is the loss of the row player
// and the reward of the column player. Indices are 0-based throughout the
// library; documentation of the games uses the usual 1-based convention.
class MatrixGame {
 public:
  MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff);
  MatrixGame(std::size_t rows, std::size_t cols, double fill = 0.0);
  static MatrixGame from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return payoff_[i * cols_ + j]; }
  double& at(std::size_t i, std::size_t j) { return payoff_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {payoff_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return payoff_; }

  MatrixGame transposed() const;
  double min_entry() const;
  double max_entry() const;

  bool operator==(const MatrixGame&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> payoff_;
};

// Probability vector over one side's pure strategies.
class MixedStrategy {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit MixedStrategy(std::vector<double> weights);
  static MixedStrategy pure(std::size_t dim, std::size_t index);
  static MixedStrategy uniform(std::size_t dim);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  // Indices carrying weight strictly above `threshold`.
  std::vector<std::size_t> support(double threshold = 0.0) const;

 private:
  std::vector<double> weights_;
};

// Unnormalized play counts (the running p, q of fictitious play). Values
// computed against a profile are w.r.t. the raw counts.
class WeightedProfile {
 public:
  explicit WeightedProfile(std::size_t dim);
  explicit WeightedProfile(std::vector<double> counts);
  WeightedProfile(const MixedStrategy& strategy);  // NOLINT: implicit on purpose

  std::size_t size() const { return counts_.size(); }
  double total() const { return total_; }
  double operator[](std::size_t i) const { return counts_[i]; }
  std::span<const double> counts() const { return counts_; }

  void add(std::size_t index, double amount = 1.0);
  MixedStrategy normalized() const;

 private:
  std::vector<double> counts_;
  double total_ = 0.0;
};

// Insertion-ordered set of pure-strategy indices (the R and C of double oracle).
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::size_t bound) : bound_(bound) {}
  SupportSet(std::size_t bound, std::vector<std::size_t> indices);

  // Returns true if the index was new.
  bool insert(std::size_t index);
  bool contains(std::size_t index) const;

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t bound() const { return bound_; }
  std::size_t operator[](std::size_t k) const { return order_[k]; }
  const std::vector<std::size_t>& indices() const { return order_; }

 private:
  std::size_t bound_ = 0;
  std::vector<std::size_t> order_;
  std::vector<bool> member_;
};

struct BestResponse {
  std::size_t index;
  double value;
};

double value(const MatrixGame& game, const MixedStrategy& p, const MixedStrategy& q);

// argmin_i (M q)_i with the least index on ties.
BestResponse best_response_row(const MatrixGame& game, const WeightedProfile& q);
// argmax_j (p^T M)_j with the least index on ties.
BestResponse best_response_col(const MatrixGame& game, const WeightedProfile& p);

// BRVal_c(p) - BRVal_r(q); the pair is an eps-equilibrium whenever this is <= eps.
double exploitability(const MatrixGame& game, const MixedStrategy& p, const MixedStrategy& q);

struct AffineMap {
  double scale;  // normalized = (original - shift) * scale
  double shift;
  double restore(double normalized) const { return normalized / scale + shift; }
};

struct NormalizedGame {
  MatrixGame game;
  AffineMap map;
};

// Maps entries onto [0, 1] by (M - min) / (max - min); constant games map to 0.
NormalizedGame normalize_unit(const MatrixGame& game);

struct Subgame {
  MatrixGame game;
  std::vector<std::size_t> row_ids;  // global index of each subgame row
  std::vector<std::size_t> col_ids;
};

Subgame submatrix(const MatrixGame& game, const SupportSet& rows, const SupportSet& cols);

// Lifts a strategy over `ids` into the full dimension, zero off-support.
MixedStrategy embed(const MixedStrategy& local, const std::vector<std::size_t>& ids, std::size_t dim);

}  // namespace pbro

#pragma once

#include <cstddef>
#include <span>

#include "pbro/cluster_map.hpp"
#include "pbro/matrix_game.hpp"
#include "pbro/perturbation.hpp"
#include "pbro/random_source.hpp"

namespace pbro {

// Result of one oracle call: the (possibly perturbed) pure response and the
// exact, unperturbed best-response value against the same weights.
struct Response {
  std::size_t index;
  double value;
};

// Best-response oracles of a zero-sum game, possibly backed by structure
// rather than a stored matrix. Weights are unnormalized and indexed over the
// opponent's full strategy set.
class ResponseOracles {
 public:
  virtual ~ResponseOracles() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual double entry(std::size_t i, std::size_t j) const = 0;

  // Row player: index minimizes the perturbed loss, value = min_i (M w)_i.
  virtual Response respond_row(std::span<const double> col_weights, const PerturbationSpec& spec,
                               RandomSource& rng) const = 0;
  // Column player: index maximizes the perturbed reward, value = max_j (w^T M)_j.
  virtual Response respond_col(std::span<const double> row_weights, const PerturbationSpec& spec,
                               RandomSource& rng) const = 0;

  virtual Subgame restrict(const SupportSet& rows, const SupportSet& cols) const;
};

// Full-vector perturbation on a dense matrix.
class MatrixOracles final : public ResponseOracles {
 public:
  explicit MatrixOracles(const MatrixGame& game) : game_(game) {}

  std::size_t rows() const override { return game_.rows(); }
  std::size_t cols() const override { return game_.cols(); }
  double entry(std::size_t i, std::size_t j) const override { return game_(i, j); }
  Response respond_row(std::span<const double> col_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;
  Response respond_col(std::span<const double> row_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;
  Subgame restrict(const SupportSet& rows, const SupportSet& cols) const override;

 private:
  const MatrixGame& game_;
};

// One shared perturbation per cluster of cells (terminal-reward noise).
class ClusterOracles final : public ResponseOracles {
 public:
  ClusterOracles(const MatrixGame& game, const ClusterMap& clusters);

  std::size_t rows() const override { return game_.rows(); }
  std::size_t cols() const override { return game_.cols(); }
  double entry(std::size_t i, std::size_t j) const override { return game_(i, j); }
  Response respond_row(std::span<const double> col_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;
  Response respond_col(std::span<const double> row_weights, const PerturbationSpec& spec,
                       RandomSource& rng) const override;
  Subgame restrict(const SupportSet& rows, const SupportSet& cols) const override;

 private:
  const MatrixGame& game_;
  const ClusterMap& clusters_;
};

}  // namespace pbro

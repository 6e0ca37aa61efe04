#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbro/cluster_map.hpp"
#include "pbro/matrix_game.hpp"
#include "pbro/random_source.hpp"

namespace pbro {

// Noise distribution for perturbed oracles: none, U(a, b) or Gumbel(mu, beta).
class PerturbationSpec {
 public:
  enum class Kind { kNone, kUniform, kGumbel };

  PerturbationSpec() = default;
  static PerturbationSpec none() { return {}; }
  static PerturbationSpec uniform(double a, double b);
  static PerturbationSpec gumbel(double mu, double beta);

  // Accepts "none", "uniform:a,b" and "gumbel:mu,beta".
  static PerturbationSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  bool active() const { return kind_ != Kind::kNone; }
  // (a, b) for uniform, (mu, beta) for Gumbel.
  double first() const { return first_; }
  double second() const { return second_; }

  // Fills `out` with i.i.d. draws and advances the source by out.size().
  void sample(RandomSource& rng, std::span<double> out) const;

  bool operator==(const PerturbationSpec&) const = default;

 private:
  PerturbationSpec(Kind kind, double first, double second) : kind_(kind), first_(first), second_(second) {}

  Kind kind_ = Kind::kNone;
  double first_ = 0.0;
  double second_ = 0.0;
};

std::vector<double> sample_uniform(RandomSource& rng, double a, double b, std::size_t dim);
std::vector<double> sample_gumbel(RandomSource& rng, double mu, double beta, std::size_t dim);

MixedStrategy softmax(std::span<const double> x);

// argmin_i (M q - u)_i with u drawn from `spec`; spec none is the exact oracle.
std::size_t perturbed_best_response_row(const MatrixGame& game, const WeightedProfile& q,
                                        const PerturbationSpec& spec, RandomSource& rng);
// argmax_j (p^T M + v)_j.
std::size_t perturbed_best_response_col(const MatrixGame& game, const WeightedProfile& p,
                                        const PerturbationSpec& spec, RandomSource& rng);

// Perturbed oracle on M + sum_k z_k B_k: one draw z_k per cluster, applied to
// every cell of that cluster. Computed per row without forming the matrix.
std::size_t cluster_perturbed_best_response(const MatrixGame& game, const ClusterMap& clusters,
                                            Side side, const WeightedProfile& weights,
                                            const PerturbationSpec& spec, RandomSource& rng);
// Same with an explicit perturbation vector (one entry per cluster).
std::size_t cluster_best_response(const MatrixGame& game, const ClusterMap& clusters, Side side,
                                  const WeightedProfile& weights, std::span<const double> z);

// Gumbel scale and horizon that give stochastic fictitious play its
// O(log n / eps^2) guarantee:
//   beta = (2 + sqrt(2 ln n)) / (eps sqrt(8 ln n)),  T = ceil(((2 + sqrt(2 ln n)) / eps)^2)
// and eta = 1 / beta is the matching forecaster learning rate.
struct SFPTheoryParams {
  double n;
  double eps;
  double beta;
  long long horizon;
  double eta;
};

// n is taken as a real so that n = e (ln n = 1) can be evaluated.
SFPTheoryParams sfp_theory_params(double n, double eps);

// Inverse of F(x) = exp(-exp(-(x - mu) / beta)) at u in (0, 1).
inline double gumbel_quantile(double u, double mu, double beta) {
  return mu - beta * std::log(-std::log(u));
}

}  // namespace pbro


#include "pbro/perturbation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "pbro/kernels.hpp"

namespace pbro {
namespace {

double parse_number(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in perturbation spec");
  }
  return v;
}

std::pair<double, double> parse_pair(std::string_view args) {
  const auto comma = args.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("perturbation spec needs two parameters");
  return {parse_number(args.substr(0, comma)), parse_number(args.substr(comma + 1))};
}

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

constexpr std::size_t kParallelFill = 1u << 15;

template <typename Transform>
void fill(RandomSource& rng, std::span<double> out, Transform transform) {
  const RandomSource base = rng;
  const std::uint64_t start = rng.position();
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelFill)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = transform(base, start + static_cast<std::uint64_t>(i));
  }
  rng.skip(out.size());
}

}  // namespace

PerturbationSpec PerturbationSpec::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform perturbation needs a < b");
  return {Kind::kUniform, a, b};
}

PerturbationSpec PerturbationSpec::gumbel(double mu, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("gumbel perturbation needs beta > 0");
  return {Kind::kGumbel, mu, beta};
}

PerturbationSpec PerturbationSpec::parse(std::string_view text) {
  if (text == "none") return none();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown perturbation '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto [x, y] = parse_pair(text.substr(colon + 1));
  if (name == "uniform") return uniform(x, y);
  if (name == "gumbel") return gumbel(x, y);
  throw std::invalid_argument("unknown perturbation '" + std::string(text) + "'");
}

std::string PerturbationSpec::to_string() const {
  switch (kind_) {
    case Kind::kNone:
      return "none";
    case Kind::kUniform:
      return "uniform:" + format_number(first_) + "," + format_number(second_);
    case Kind::kGumbel:
      return "gumbel:" + format_number(first_) + "," + format_number(second_);
  }
  return "none";
}

void PerturbationSpec::sample(RandomSource& rng, std::span<double> out) const {
  switch (kind_) {
    case Kind::kNone:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case Kind::kUniform: {
      const double a = first_;
      const double width = second_ - first_;
      fill(rng, out, [a, width](const RandomSource& r, std::uint64_t pos) { return a + width * r.unit_at(pos); });
      return;
    }
    case Kind::kGumbel: {
      const double mu = first_;
      const double beta = second_;
      fill(rng, out, [mu, beta](const RandomSource& r, std::uint64_t pos) {
        return gumbel_quantile(r.open_unit_at(pos), mu, beta);
      });
      return;
    }
  }
}

std::vector<double> sample_uniform(RandomSource& rng, double a, double b, std::size_t dim) {
  std::vector<double> out(dim);
  PerturbationSpec::uniform(a, b).sample(rng, out);
  return out;
}

std::vector<double> sample_gumbel(RandomSource& rng, double mu, double beta, std::size_t dim) {
  std::vector<double> out(dim);
  PerturbationSpec::gumbel(mu, beta).sample(rng, out);
  return out;
}

MixedStrategy softmax(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("softmax of an empty vector");
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<double> w(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w[i] = std::exp(x[i] - top);
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return MixedStrategy(std::move(w));
}

std::size_t perturbed_best_response_row(const MatrixGame& game, const WeightedProfile& q,
                                        const PerturbationSpec& spec, RandomSource& rng) {
  if (q.size() != game.cols()) throw std::invalid_argument("column profile dimension mismatch");
  if (!spec.active()) return best_response_row(game, q).index;
  std::vector<double> values(game.rows());
  kernels::row_values(game, kernels::SparseWeights::from_dense(q.counts()), values);
  std::vector<double> noise(game.rows());
  spec.sample(rng, noise);
  return kernels::argmin_minus(values, noise).index;
}

std::size_t perturbed_best_response_col(const MatrixGame& game, const WeightedProfile& p,
                                        const PerturbationSpec& spec, RandomSource& rng) {
  if (p.size() != game.rows()) throw std::invalid_argument("row profile dimension mismatch");
  if (!spec.active()) return best_response_col(game, p).index;
  std::vector<double> values(game.cols());
  kernels::col_values(game, kernels::SparseWeights::from_dense(p.counts()), values);
  std::vector<double> noise(game.cols());
  spec.sample(rng, noise);
  return kernels::argmax_plus(values, noise).index;
}

std::size_t cluster_best_response(const MatrixGame& game, const ClusterMap& clusters, Side side,
                                  const WeightedProfile& weights, std::span<const double> z) {
  if (clusters.rows() != game.rows() || clusters.cols() != game.cols()) {
    throw std::invalid_argument("cluster map shape does not match the game");
  }
  if (z.size() != clusters.clusters()) throw std::invalid_argument("one perturbation per cluster required");
  const auto sparse = kernels::SparseWeights::from_dense(weights.counts());
  if (side == Side::kRow) {
    if (weights.size() != game.cols()) throw std::invalid_argument("column profile dimension mismatch");
    std::vector<double> values(game.rows());
    kernels::cluster_row_values(game, clusters.cells(), z, sparse, values);
    return kernels::argmin(values).index;
  }
  if (weights.size() != game.rows()) throw std::invalid_argument("row profile dimension mismatch");
  std::vector<double> values(game.cols());
  kernels::cluster_col_values(game, clusters.cells(), z, sparse, values);
  return kernels::argmax(values).index;
}

std::size_t cluster_perturbed_best_response(const MatrixGame& game, const ClusterMap& clusters,
                                            Side side, const WeightedProfile& weights,
                                            const PerturbationSpec& spec, RandomSource& rng) {
  std::vector<double> z(clusters.clusters());
  spec.sample(rng, z);
  return cluster_best_response(game, clusters, side, weights, z);
}

SFPTheoryParams sfp_theory_params(double n, double eps) {
  if (!(n >= 2.0)) throw std::invalid_argument("sfp_theory_params needs n >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("sfp_theory_params needs eps > 0");
  const double ln_n = std::log(n);
  const double numerator = 2.0 + std::sqrt(2.0 * ln_n);
  const double beta = numerator / (eps * std::sqrt(8.0 * ln_n));
  const double ratio = numerator / eps;
  const auto horizon = static_cast<long long>(std::ceil(ratio * ratio));
  return {n, eps, beta, horizon, 1.0 / beta};
}

}  // namespace pbro

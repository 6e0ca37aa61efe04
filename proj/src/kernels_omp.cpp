#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pbro/kernels.hpp"

namespace pbro::kernels::omp {
namespace {

constexpr std::size_t kColumnBlock = 512;

// Per-thread scan over a static chunk, combined in thread order. Because
// chunks are contiguous and visited in order, keeping the strictly better
// value reproduces the serial least-index tie rule.
template <typename Value, typename Better>
Extreme reduce(std::size_t size, Value value_at, Better better) {
  if (size == 0) throw std::invalid_argument("reduction over empty vector");
  const int threads = omp_get_max_threads();
  std::vector<Extreme> partial(static_cast<std::size_t>(threads), Extreme{size, 0.0});
#pragma omp parallel num_threads(threads)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    const auto count = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t chunk = (size + count - 1) / count;
    const std::size_t begin = std::min(size, tid * chunk);
    const std::size_t end = std::min(size, begin + chunk);
    if (begin < end) {
      Extreme best{begin, value_at(begin)};
      for (std::size_t i = begin + 1; i < end; ++i) {
        const double v = value_at(i);
        if (better(v, best.value)) best = {i, v};
      }
      partial[tid] = best;
    }
  }
  Extreme best{size, 0.0};
  for (const Extreme& e : partial) {
    if (e.index == size) continue;
    if (best.index == size || better(e.value, best.value)) best = e;
  }
  return best;
}

constexpr auto kLess = [](double a, double b) { return a < b; };
constexpr auto kGreater = [](double a, double b) { return a > b; };

}  // namespace

int max_threads() { return omp_get_max_threads(); }

void row_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  const auto m = static_cast<std::ptrdiff_t>(game.rows());
  const std::size_t nnz = w.nnz();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const auto row = game.row(static_cast<std::size_t>(i));
    double acc = 0.0;
    for (std::size_t k = 0; k < nnz; ++k) acc += row[w.index[k]] * w.weight[k];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

void col_values(const MatrixGame& game, const SparseWeights& w, std::span<double> out) {
  const std::size_t n = game.cols();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t end = std::min(n, begin + kColumnBlock);
    for (std::size_t j = begin; j < end; ++j) out[j] = 0.0;
    for (std::size_t k = 0; k < w.nnz(); ++k) {
      const auto row = game.row(w.index[k]);
      const double wk = w.weight[k];
      for (std::size_t j = begin; j < end; ++j) out[j] += wk * row[j];
    }
  }
}

void cluster_row_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  const auto m = static_cast<std::ptrdiff_t>(game.rows());
  const std::size_t n = game.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto row = game.row(i);
    const std::uint32_t* cl = clusters.data() + i * n;
    double acc = 0.0;
    for (std::size_t k = 0; k < w.nnz(); ++k) {
      const std::size_t j = w.index[k];
      acc += (row[j] + z[cl[j]]) * w.weight[k];
    }
    out[i] = acc;
  }
}

void cluster_col_values(const MatrixGame& game, std::span<const std::uint32_t> clusters,
                        std::span<const double> z, const SparseWeights& w,
                        std::span<double> out) {
  const std::size_t n = game.cols();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t end = std::min(n, begin + kColumnBlock);
    for (std::size_t j = begin; j < end; ++j) out[j] = 0.0;
    for (std::size_t k = 0; k < w.nnz(); ++k) {
      const std::size_t i = w.index[k];
      const auto row = game.row(i);
      const std::uint32_t* cl = clusters.data() + i * n;
      const double wk = w.weight[k];
      for (std::size_t j = begin; j < end; ++j) out[j] += wk * (row[j] + z[cl[j]]);
    }
  }
}

Extreme argmin(std::span<const double> v) {
  return reduce(v.size(), [&](std::size_t i) { return v[i]; }, kLess);
}

Extreme argmax(std::span<const double> v) {
  return reduce(v.size(), [&](std::size_t i) { return v[i]; }, kGreater);
}

Extreme argmin_minus(std::span<const double> v, std::span<const double> noise) {
  return reduce(v.size(), [&](std::size_t i) { return v[i] - noise[i]; }, kLess);
}

Extreme argmax_plus(std::span<const double> v, std::span<const double> noise) {
  return reduce(v.size(), [&](std::size_t i) { return v[i] + noise[i]; }, kGreater);
}

}  // namespace pbro::kernels::omp

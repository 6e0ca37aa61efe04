#include "pbro/nash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbro {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kImprovementTol = 1e-12;

// Dense tableau for: max sum(x) s.t. A^T x + s = 1, x, s >= 0, where A is
// the m x n shifted payoff. One constraint row per column of A.
enum class PivotRule { kGreatestImprovement, kDantzig };

class Tableau {
 public:
  Tableau(const MatrixGame& shifted, PivotRule rule)
      : rule_(rule), m_(shifted.rows()), n_(shifted.cols()), width_(m_ + n_ + 1),
        cells_(n_ * width_, 0.0), reduced_(m_ + n_, 0.0), basis_(n_) {
    for (std::size_t r = 0; r < n_; ++r) {
      double* row = cells_.data() + r * width_;
      for (std::size_t i = 0; i < m_; ++i) row[i] = shifted(i, r);
      row[m_ + r] = 1.0;
      row[width_ - 1] = 1.0;
      basis_[r] = m_ + r;
    }
    std::fill(reduced_.begin(), reduced_.begin() + static_cast<std::ptrdiff_t>(m_), 1.0);
  }

  // Returns false once no improving column remains.
  bool step() {
    const std::size_t vars = m_ + n_;
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < vars; ++c) {
      if (reduced_[c] > kCostTol) candidates.push_back(c);
    }
    if (candidates.empty()) return false;

    // Ratio test for every candidate column in one row-major sweep.
    const std::size_t none = n_;
    std::vector<double> theta(candidates.size(), std::numeric_limits<double>::infinity());
    std::vector<std::size_t> leave(candidates.size(), none);
    for (std::size_t r = 0; r < n_; ++r) {
      const double* row = cells_.data() + r * width_;
      const double rhs = row[width_ - 1];
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double a = row[candidates[k]];
        if (a <= kPivotTol) continue;
        const double t = rhs / a;
        if (t < theta[k] || (t == theta[k] && basis_[r] < basis_[leave[k]])) {
          theta[k] = t;
          leave[k] = r;
        }
      }
    }

    std::size_t pick = candidates.size();
    if (rule_ == PivotRule::kGreatestImprovement) {
      double best_gain = kImprovementTol;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (leave[k] == none) throw NumericalError("simplex: unbounded direction in a bounded program");
        const double gain = reduced_[candidates[k]] * theta[k];
        if (gain > best_gain) {
          best_gain = gain;
          pick = k;
        }
      }
    } else {
      std::size_t k_max = 0;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (leave[k] == none) throw NumericalError("simplex: unbounded direction in a bounded program");
        if (reduced_[candidates[k]] > reduced_[candidates[k_max]]) k_max = k;
      }
      if (reduced_[candidates[k_max]] * theta[k_max] > kImprovementTol) pick = k_max;
    }
    // Degenerate step: Bland's rule (least entering index, least leaving basic index).
    if (pick == candidates.size()) pick = 0;
    pivot(leave[pick], candidates[pick]);
    return true;
  }

  std::size_t rows() const { return n_; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  double rhs(std::size_t r) const { return cells_[r * width_ + width_ - 1]; }
  double reduced(std::size_t var) const { return reduced_[var]; }

 private:
  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = cells_.data() + pr * width_;
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == pr) continue;
      double* row = cells_.data() + r * width_;
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
      if (row[width_ - 1] < 0.0 && row[width_ - 1] > -1e-12) row[width_ - 1] = 0.0;
    }
    const double f = reduced_[pc];
    for (std::size_t c = 0; c < m_ + n_; ++c) reduced_[c] -= f * prow[c];
    reduced_[pc] = 0.0;
    basis_[pr] = pc;
  }

  PivotRule rule_;
  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> cells_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
};

MixedStrategy normalize_nonneg(std::vector<double> w) {
  double sum = 0.0;
  for (double& v : w) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (!(sum > 0.0)) throw NumericalError("degenerate strategy recovered from solver");
  for (double& v : w) v /= sum;
  return MixedStrategy(std::move(w));
}

// Solves the square system in place by Gaussian elimination with partial
// pivoting. Returns nullopt when the matrix is numerically singular.
std::optional<std::vector<double>> solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < 1e-12) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return x;
}

// Weights w over `support` and value v with sum_k coef(s, support[k]) w_k = v
// for every s in `other`, and sum w = 1.
std::optional<std::pair<std::vector<double>, double>> equalizer(
    const std::vector<std::size_t>& other, const std::vector<std::size_t>& support,
    const auto& coef) {
  const std::size_t k = support.size();
  const std::size_t n = k + 1;
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r * n + c] = coef(other[r], support[c]);
    a[r * n + k] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) a[k * n + c] = 1.0;
  b[k] = 1.0;
  auto x = solve_linear(std::move(a), std::move(b), n);
  if (!x) return std::nullopt;
  const double v = x->back();
  x->pop_back();
  for (double w : *x) {
    if (w < -1e-12) return std::nullopt;
  }
  return std::make_pair(std::move(*x), v);
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace

NashSolution nash_lp(const MatrixGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  for (double v : game.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("nash_lp: non-finite payoff entry");
  }
  const double lo = game.min_entry();
  const double hi = game.max_entry();
  if (lo == hi) return {MixedStrategy::pure(m, 0), MixedStrategy::pure(n, 0), lo};

  const double shift = 1.0 - lo;
  std::vector<double> data(game.data().begin(), game.data().end());
  for (double& v : data) v += shift;
  const MatrixGame shifted(m, n, std::move(data));

  const std::size_t budget = 10 * (m + n + 1);
  const double tolerance = 1e-7 * std::max(1.0, hi - lo);
  std::string failure;
  for (PivotRule rule : {PivotRule::kGreatestImprovement, PivotRule::kDantzig}) {
    Tableau tab(shifted, rule);
    std::size_t pivots = 0;
    while (pivots <= budget && tab.step()) ++pivots;
    if (pivots > budget) {
      failure = "simplex exceeded " + std::to_string(budget) + " pivots";
      continue;
    }

    std::vector<double> x(m, 0.0);
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      if (tab.basic(r) < m) x[tab.basic(r)] = tab.rhs(r);
    }
    std::vector<double> y(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) y[j] = -tab.reduced(m + j);

    double objective = 0.0;
    for (double v : x) objective += v;
    if (!(objective > 0.0)) {
      failure = "simplex returned a zero objective";
      continue;
    }

    NashSolution sol{normalize_nonneg(std::move(x)), normalize_nonneg(std::move(y)), 0.0};
    sol.value = value(game, sol.row, sol.col);
    if (exploitability(game, sol.row, sol.col) <= tolerance) return sol;
    failure = "simplex solution failed the equilibrium check";
  }
  throw NumericalError(failure);
}

NashSolution support_enum_nash(const MatrixGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  if (m > 6 || n > 6) throw std::invalid_argument("support enumeration is limited to 6x6 games");
  constexpr double kTol = 1e-9;

  const auto payoff = [&](std::size_t i, std::size_t j) { return game(i, j); };
  const auto payoff_t = [&](std::size_t j, std::size_t i) { return game(i, j); };

  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    auto rows = first_combination(k);
    do {
      auto cols = first_combination(k);
      do {
        // Column weights make every support row indifferent, and vice versa.
        auto q = equalizer(rows, cols, payoff);
        if (!q) continue;
        auto p = equalizer(cols, rows, payoff_t);
        if (!p) continue;
        const double v = q->second;

        std::vector<double> full_q(n, 0.0);
        std::vector<double> full_p(m, 0.0);
        for (std::size_t c = 0; c < k; ++c) full_q[cols[c]] = std::max(0.0, q->first[c]);
        for (std::size_t r = 0; r < k; ++r) full_p[rows[r]] = std::max(0.0, p->first[r]);

        bool stable = true;
        for (std::size_t i = 0; i < m && stable; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += game(i, j) * full_q[j];
          stable = acc >= v - kTol;
        }
        for (std::size_t j = 0; j < n && stable; ++j) {
          double acc = 0.0;
          for (std::size_t i = 0; i < m; ++i) acc += full_p[i] * game(i, j);
          stable = acc <= v + kTol;
        }
        if (!stable) continue;
        return {normalize_nonneg(std::move(full_p)), normalize_nonneg(std::move(full_q)), v};
      } while (next_combination(cols, n));
    } while (next_combination(rows, m));
  }
  throw NumericalError("support enumeration found no equilibrium");
}

}  // namespace pbro

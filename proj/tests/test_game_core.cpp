#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pbro/games.hpp"
#include "pbro/matrix_game.hpp"
#include "pbro/matrix_io.hpp"
#include "pbro/nash.hpp"
#include "pbro/random_source.hpp"

using namespace pbro;

namespace {

MatrixGame pennies() { return MatrixGame::from_rows({{1, -1}, {-1, 1}}); }

MatrixGame random_game(std::size_t m, std::size_t n, RandomSource& rng) {
  std::vector<double> data(m * n);
  for (double& v : data) v = 2.0 * rng.next_unit() - 1.0;
  return MatrixGame(m, n, std::move(data));
}

// Brute-force row oracle: first index attaining the minimum of M q.
std::pair<std::size_t, double> brute_row(const MatrixGame& g, const std::vector<double>& q) {
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) v += g(i, j) * q[j];
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return {best, best_v};
}

}  // namespace

TEST_CASE("value of pure and mixed profiles") {
  const MatrixGame l2 = games::make_L(2);
  CHECK(value(l2, MixedStrategy::pure(2, 0), MixedStrategy::pure(2, 1)) == 1.0);
  CHECK(value(l2, MixedStrategy::uniform(2), MixedStrategy::uniform(2)) == 0.0);
  CHECK(value(MatrixGame::from_rows({{3.5}}), MixedStrategy::pure(1, 0), MixedStrategy::pure(1, 0)) == 3.5);
  CHECK_THROWS(value(l2, MixedStrategy::uniform(3), MixedStrategy::uniform(2)));
}

TEST_CASE("mixed strategies validate their weights") {
  CHECK_THROWS(MixedStrategy({0.5, 0.6}));
  CHECK_THROWS(MixedStrategy({1.5, -0.5}));
  CHECK_THROWS(MixedStrategy(std::vector<double>{}));
  const MixedStrategy s({0.25, 0.0, 0.75});
  CHECK(s.support() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("row best response") {
  const MatrixGame l3 = games::make_L(3);
  auto br = best_response_row(l3, WeightedProfile(MixedStrategy::pure(3, 2)));
  CHECK(br.index == 2);
  CHECK(br.value == 0.0);

  br = best_response_row(games::make_L(2), WeightedProfile(std::vector<double>{0.5, 0.5}));
  CHECK(br.index == 1);
  CHECK(br.value == doctest::Approx(-0.5));

  // Values are reported on raw counts.
  br = best_response_row(games::make_L(2), WeightedProfile(std::vector<double>{3.0, 3.0}));
  CHECK(br.index == 1);
  CHECK(br.value == doctest::Approx(-3.0));
  CHECK_THROWS(best_response_row(l3, WeightedProfile(std::vector<double>{1.0, 0.0})));
}

TEST_CASE("column best response") {
  const MatrixGame l3 = games::make_L(3);
  auto br = best_response_col(l3, WeightedProfile(MixedStrategy::pure(3, 0)));
  CHECK(br.index == 1);
  CHECK(br.value == 1.0);
  br = best_response_col(l3, WeightedProfile(MixedStrategy::pure(3, 2)));
  CHECK(br.index == 2);
  CHECK(br.value == 0.0);
  br = best_response_col(l3, WeightedProfile(std::vector<double>{5.0, 0.0, 0.0}));
  CHECK(br.index == 1);
  CHECK(br.value == 5.0);
}

TEST_CASE("best responses take the least index and match brute force") {
  RandomSource rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    // Integer payoffs make ties frequent.
    const std::size_t m = 1 + rng.next_u64() % 6;
    const std::size_t n = 1 + rng.next_u64() % 6;
    std::vector<double> data(m * n);
    for (double& v : data) v = static_cast<double>(rng.next_u64() % 3);
    const MatrixGame g(m, n, data);
    std::vector<double> q(n, 0.0);
    q[rng.next_u64() % n] = 1.0;
    const auto expect = brute_row(g, q);
    const auto got = best_response_row(g, WeightedProfile(q));
    CHECK(got.index == expect.first);
    CHECK(got.value == expect.second);

    const MatrixGame neg_t = [&] {
      std::vector<double> d(m * n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) d[j * m + i] = -g(i, j);
      return MatrixGame(n, m, d);
    }();
    const auto expect_max = brute_row(neg_t, std::vector<double>(m, 1.0));
    const auto got_c = best_response_col(g, WeightedProfile(std::vector<double>(m, 1.0)));
    CHECK(got_c.index == expect_max.first);
    CHECK(got_c.value == -expect_max.second);
  }
}

TEST_CASE("best responses are invariant under positive affine maps") {
  RandomSource rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixGame g = random_game(5, 7, rng);
    std::vector<double> d(g.data().begin(), g.data().end());
    for (double& v : d) v = 3.0 * v + 2.0;
    const MatrixGame h(5, 7, d);
    std::vector<double> q(7), p(5);
    for (double& v : q) v = rng.next_unit();
    for (double& v : p) v = rng.next_unit();
    CHECK(best_response_row(g, WeightedProfile(q)).index == best_response_row(h, WeightedProfile(q)).index);
    CHECK(best_response_col(g, WeightedProfile(p)).index == best_response_col(h, WeightedProfile(p)).index);
  }
}

TEST_CASE("exploitability") {
  const MatrixGame l3 = games::make_L(3);
  CHECK(exploitability(l3, MixedStrategy::pure(3, 2), MixedStrategy::pure(3, 2)) == 0.0);
  CHECK(exploitability(pennies(), MixedStrategy::uniform(2), MixedStrategy::uniform(2)) == 0.0);
  CHECK(exploitability(pennies(), MixedStrategy::pure(2, 0), MixedStrategy::pure(2, 0)) == 2.0);

  RandomSource rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixGame g = random_game(4, 6, rng);
    std::vector<double> p(4), q(6);
    for (double& v : p) v = rng.next_unit();
    for (double& v : q) v = rng.next_unit();
    const MixedStrategy ps = WeightedProfile(p).normalized();
    const MixedStrategy qs = WeightedProfile(q).normalized();
    CHECK(exploitability(g, ps, qs) >= -1e-12);
  }
}

TEST_CASE("normalize_unit") {
  auto n = normalize_unit(games::make_L(2));
  CHECK(n.game == MatrixGame::from_rows({{0.5, 1.0}, {0.0, 0.5}}));
  CHECK(n.map.restore(1.0) == doctest::Approx(1.0));
  CHECK(n.map.restore(0.0) == doctest::Approx(-1.0));

  const MatrixGame binary = MatrixGame::from_rows({{0, 1}, {1, 0}});
  CHECK(normalize_unit(binary).game == binary);
  CHECK(normalize_unit(MatrixGame::from_rows({{4.0, 4.0}})).game == MatrixGame::from_rows({{0.0, 0.0}}));
}

TEST_CASE("submatrix") {
  const MatrixGame l3 = games::make_L(3);
  Subgame s = submatrix(l3, SupportSet(3, {0, 2}), SupportSet(3, {1}));
  CHECK(s.game == MatrixGame::from_rows({{1}, {-1}}));
  CHECK(s.row_ids == std::vector<std::size_t>{0, 2});
  CHECK(s.col_ids == std::vector<std::size_t>{1});

  CHECK(submatrix(l3, SupportSet(3, {0, 1, 2}), SupportSet(3, {0, 1, 2})).game == l3);
  CHECK(submatrix(l3, SupportSet(3, {1}), SupportSet(3, {1})).game == MatrixGame::from_rows({{0}}));
  CHECK_THROWS(submatrix(l3, SupportSet(3), SupportSet(3, {1})));
  CHECK_THROWS(SupportSet(3, {3}));
}

TEST_CASE("support set keeps insertion order") {
  SupportSet s(5);
  CHECK(s.insert(3));
  CHECK(s.insert(1));
  CHECK_FALSE(s.insert(3));
  CHECK(s.indices() == std::vector<std::size_t>{3, 1});
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(0));
}

TEST_CASE("nash_lp examples") {
  auto sol = nash_lp(MatrixGame::from_rows({{2.5}}));
  CHECK(sol.value == 2.5);
  CHECK(sol.row[0] == 1.0);

  sol = nash_lp(pennies());
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.row[0] == doctest::Approx(0.5));
  CHECK(sol.col[0] == doctest::Approx(0.5));

  sol = nash_lp(games::make_L(4));
  CHECK(sol.row[3] == doctest::Approx(1.0));
  CHECK(sol.col[3] == doctest::Approx(1.0));
  CHECK(sol.value == doctest::Approx(0.0));

  // Constant game: first strategies.
  sol = nash_lp(MatrixGame(3, 2, 1.5));
  CHECK(sol.row[0] == 1.0);
  CHECK(sol.col[0] == 1.0);
  CHECK(sol.value == 1.5);
}

TEST_CASE("nash_lp rejects non-finite entries") {
  MatrixGame g(2, 2, 0.0);
  g.at(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(nash_lp(g));
}

TEST_CASE("support enumeration examples") {
  CHECK(support_enum_nash(pennies()).value == doctest::Approx(0.0));
  auto sol = support_enum_nash(games::make_L(3));
  CHECK(sol.value == doctest::Approx(0.0));
  CHECK(sol.row.support(1e-12) == std::vector<std::size_t>{2});
  CHECK(sol.col.support(1e-12) == std::vector<std::size_t>{2});

  sol = support_enum_nash(MatrixGame::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}));
  CHECK(sol.value == doctest::Approx(0.0));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sol.row[i] == doctest::Approx(1.0 / 3));
    CHECK(sol.col[i] == doctest::Approx(1.0 / 3));
  }
  CHECK_THROWS(support_enum_nash(MatrixGame(7, 2, 0.0)));
}

TEST_CASE("nash_lp agrees with support enumeration") {
  RandomSource rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 4;
    const std::size_t n = 1 + rng.next_u64() % 4;
    const MatrixGame g = random_game(m, n, rng);
    const auto a = nash_lp(g);
    const auto b = support_enum_nash(g);
    CHECK(std::abs(a.value - b.value) <= 1e-9);
    CHECK(exploitability(g, a.row, a.col) <= 1e-7);
  }
}

TEST_CASE("nash_lp on a full selection matches the original game") {
  RandomSource rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const MatrixGame g = random_game(6, 5, rng);
    const auto s = submatrix(g, SupportSet(6, {0, 1, 2, 3, 4, 5}), SupportSet(5, {0, 1, 2, 3, 4}));
    CHECK(std::abs(nash_lp(s.game).value - nash_lp(g).value) <= 1e-9);
  }
}

TEST_CASE("nash_lp on larger games passes its equilibrium check") {
  RandomSource rng(5);
  for (std::size_t n : {10u, 40u, 80u}) {
    const MatrixGame g = random_game(n, n + 3, rng);
    const auto sol = nash_lp(g);
    CHECK(exploitability(g, sol.row, sol.col) <= 1e-7);
  }
  const MatrixGame morra = normalize_unit(games::make_morra(5)).game;
  const auto sol = nash_lp(morra);
  CHECK(exploitability(morra, sol.row, sol.col) <= 1e-7);
}

TEST_CASE("embed lifts local strategies") {
  const MixedStrategy local({0.25, 0.75});
  const MixedStrategy full = embed(local, {3, 1}, 5);
  CHECK(full[3] == 0.25);
  CHECK(full[1] == 0.75);
  CHECK(full[0] == 0.0);
}

TEST_CASE("matrix text format round trip") {
  RandomSource rng(1);
  const MatrixGame g = random_game(3, 4, rng);
  std::stringstream buf;
  write_matrix(buf, g);
  CHECK(read_matrix(buf) == g);

  std::istringstream ok("2 2\n1 2\n3 4\n");
  CHECK(read_matrix(ok) == MatrixGame::from_rows({{1, 2}, {3, 4}}));
  std::istringstream nan_text("1 2\n1 nan\n");
  CHECK_THROWS(read_matrix(nan_text));
  std::istringstream inf_text("1 1\ninf\n");
  CHECK_THROWS(read_matrix(inf_text));
  std::istringstream short_text("2 2\n1 2\n3\n");
  CHECK_THROWS(read_matrix(short_text));
}

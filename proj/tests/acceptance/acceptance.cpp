// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--only N[,N...]] [--known-failures N[,N...]]
// Exit status is 0 when every failing criterion is listed as a known failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbro/bitgame.hpp"
#include "pbro/experiment.hpp"
#include "pbro/forecaster.hpp"
#include "pbro/games.hpp"
#include "pbro/grid_game.hpp"
#include "pbro/nash.hpp"
#include "pbro/perturbation.hpp"
#include "pbro/solvers.hpp"

using namespace pbro;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

ExperimentPlan plan_from(const std::string& text) {
  std::istringstream in(text);
  return parse_plan(in);
}

// Mean iterations per size over successful runs of the one series of a plan.
std::map<std::size_t, double> mean_by_size(const std::vector<RunRecord>& records, const std::string& series) {
  std::map<std::size_t, double> out;
  for (const auto& row : summarize(records))
    if (row.series == series) out[row.size] = row.mean;
  return out;
}

bool all_succeeded(const std::vector<RunRecord>& records) {
  return std::all_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return r.error.empty() && r.terminated; });
}

std::string describe(const std::map<std::size_t, double>& means) {
  std::string s;
  for (const auto& [size, mean] : means) s += " n=" + std::to_string(size) + ":" + fmt("%.2f", mean);
  return s;
}

// Largest ratio of means between consecutive tested sizes.
double worst_growth(const std::map<std::size_t, double>& means) {
  double worst = 0.0;
  for (auto it = std::next(means.begin()); it != means.end(); ++it)
    worst = std::max(worst, it->second / std::prev(it)->second);
  return worst;
}

MatrixGame random_matrix(std::size_t m, std::size_t n, RandomSource& rng, double lo, double hi) {
  std::vector<double> data(m * n);
  for (double& v : data) v = lo + (hi - lo) * rng.next_unit();
  return MatrixGame(m, n, std::move(data));
}

Outcome c1_do_exact() {
  std::string detail;
  bool pass = true;
  auto check = [&](const char* name, const MatrixGame& g, std::size_t init) {
    SolverConfig cfg;
    cfg.init_row = cfg.init_col = init;
    const auto r = run_double_oracle(g, cfg);
    const bool ok = r.terminated && r.iterations == g.rows();
    pass = pass && ok;
    detail += std::string(" ") + name + "(" + std::to_string(g.rows()) + ")=" + std::to_string(r.iterations);
  };
  for (std::size_t n : {8, 64, 256, 1024}) check("L", games::make_L(n), 0);
  for (std::size_t n : {8, 64, 256}) check("U", games::make_U(n), n - 1);
  return {pass, detail};
}

Outcome c2_sdo_on_S() {
  const auto records = run_experiment(plan_from(
      "game = S:{n}\nalgorithm = sdo\nperturbation = uniform:-0.5,0.5\ninit = worst\neps = 0.1\n"
      "sizes = 256, 1024, 4096\nreps = 10\nseed = 1\n"));
  const auto means = mean_by_size(records, "sdo");
  bool pass = all_succeeded(records) && means.size() == 3;
  for (const auto& [n, mean] : means) pass = pass && mean <= 1.0 + 4.0 * std::log(double(n)) + 10.0;
  const double ratio = means.at(4096) / means.at(1024);
  pass = pass && ratio <= 1.6;
  return {pass, describe(means) + " ratio(4096/1024)=" + fmt("%.3f", ratio)};
}

Outcome c3_sdo_on_U() {
  const auto records = run_experiment(plan_from(
      "game = U:{n}\nalgorithm = sdo\nperturbation = uniform:-1,1\ninit = worst\neps = 0.1\n"
      "sizes = 256, 1024, 4096\nreps = 10\nseed = 1\n"));
  const auto means = mean_by_size(records, "sdo");
  const double growth = worst_growth(means);
  const bool pass = all_succeeded(records) && means.at(4096) <= 100.0 && growth <= 1.6;
  return {pass, describe(means) + " max consecutive ratio=" + fmt("%.3f", growth)};
}

Outcome c4_restart_protocol() {
  const MatrixGame g = normalize_unit(games::make_U_T(512)).game;
  int successes = 0;
  std::string attempts;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = sfp_restart_protocol(g, 0.1, RandomSource(seed), 2);
    const bool ok = r.terminated && exploitability(g, r.row, r.col) <= 0.1 + 1e-9;
    successes += ok ? 1 : 0;
    attempts += " " + (ok ? std::to_string(r.attempts) : std::string("-"));
  }
  const auto params = sfp_theory_params(512.0, 0.1);
  return {successes >= 6, " successes=" + std::to_string(successes) + "/10 beta=" + fmt("%.4f", params.beta) +
                              " T=" + std::to_string(params.horizon) + " attempts:" + attempts};
}

Outcome c5_gumbel_max() {
  const std::vector<std::vector<double>> vectors{{0.0, 1.0},
                                                 {0.3, -0.2, 0.9},
                                                 {1.0, 1.0, 1.0, 1.0},
                                                 {2.0, -1.0, 0.5, 0.0, 1.5, -0.3},
                                                 {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}};
  const int samples = 100000;
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (const auto& x : vectors) {
    const MatrixGame g(1, x.size(), x);
    const WeightedProfile p(MixedStrategy::pure(1, 0));
    for (double beta : {0.5, 1.0, 2.0}) {
      RandomSource rng = RandomSource(5).derive(++stream);
      std::vector<double> freq(x.size(), 0.0);
      for (int s = 0; s < samples; ++s)
        freq[perturbed_best_response_col(g, p, PerturbationSpec::gumbel(0.0, beta), rng)] += 1.0 / samples;
      std::vector<double> scaled(x);
      for (double& v : scaled) v /= beta;
      const auto target = softmax(scaled);
      double tv = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) tv += 0.5 * std::abs(freq[i] - target[i]);
      worst = std::max(worst, tv);
    }
  }
  return {worst <= 0.01, " max TV=" + fmt("%.5f", worst)};
}

// Column responses to the k-th row (1-based) as 1-based indices.
std::vector<std::size_t> row_responses(const MatrixGame& g, std::size_t k, const PerturbationSpec& spec,
                                       std::uint64_t seed, int samples) {
  const WeightedProfile p(MixedStrategy::pure(g.rows(), k - 1));
  RandomSource rng(seed);
  std::vector<std::size_t> out(samples);
  for (auto& v : out) v = perturbed_best_response_col(g, p, spec, rng) + 1;
  return out;
}

Outcome c6_noise_on_S() {
  const MatrixGame s = games::make_S(64);
  bool pass = true;
  std::string detail;
  for (std::size_t k : {5, 10, 50}) {
    const auto idx = row_responses(s, k, PerturbationSpec::uniform(-0.5, 0.5), 100 + k, 100000);
    double sum = 0.0;
    std::size_t reach = 0;
    for (auto i : idx) {
      sum += double(i);
      reach += i >= k ? 1 : 0;
    }
    const double mean = sum / double(idx.size());
    pass = pass && std::abs(mean - k / 2.0) <= 0.1 && reach == 0;
    detail += " k=" + std::to_string(k) + ": E[I]=" + fmt("%.4f", mean) + " #(I>=k)=" + std::to_string(reach);
  }
  return {pass, detail};
}

Outcome c7_noise_on_U() {
  const MatrixGame u = games::make_U(64);
  bool pass = true;
  std::string detail;
  for (std::size_t k : {3, 10, 50}) {
    const auto idx = row_responses(u, k, PerturbationSpec::uniform(-1.0, 1.0), 200 + k, 100000);
    double sum = 0.0;
    for (auto i : idx) sum += double(i);
    const double mean = sum / double(idx.size());
    pass = pass && mean <= 0.75 * double(k);
    detail += " k=" + std::to_string(k) + ": E[I]=" + fmt("%.4f", mean) + " (<= " + fmt("%.2f", 0.75 * k) + ")";
  }
  return {pass, detail};
}

Outcome c8_rewf_regret() {
  const std::size_t horizon = 1000;
  const double eta = std::sqrt(8.0 * std::log(16.0) / double(horizon));
  const double bound = rewf_regret_bound(16, horizon, eta, 0.05);
  int row_ok = 0, col_ok = 0;
  double worst = -1e300;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MatrixGame g = games::make_random_unit(16, RandomSource(seed).derive(0x67616d65));
    const auto trace = run_rewf_selfplay(g, horizon, eta, RandomSource(seed));
    row_ok += trace.row.regret <= bound ? 1 : 0;
    col_ok += trace.col.regret <= bound ? 1 : 0;
    worst = std::max({worst, trace.row.regret, trace.col.regret});
  }
  return {row_ok >= 9 && col_ok >= 9, " bound=" + fmt("%.3f", bound) + " max regret=" + fmt("%.3f", worst) +
                                          " row " + std::to_string(row_ok) + "/10 col " + std::to_string(col_ok) +
                                          "/10"};
}

Outcome c9_restricted_S() {
  const std::size_t n = 64;
  const MatrixGame s = games::make_S(n);
  RandomSource rng(9);
  int consistent = 0;
  std::map<std::string, int> cases;
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&](SupportSet& set) {
      const std::size_t size = 1 + rng.next_u64() % 12;
      while (set.size() < size) set.insert(rng.next_u64() % n);
    };
    SupportSet rows(n), cols(n);
    draw(rows);
    draw(cols);
    const auto sub = submatrix(s, rows, cols);
    const auto sol = nash_lp(sub.game);
    const std::size_t r = *std::min_element(sub.row_ids.begin(), sub.row_ids.end());
    const std::size_t c = *std::min_element(sub.col_ids.begin(), sub.col_ids.end());
    bool ok = true;
    if (r < c) {
      cases["r<c"]++;
      for (auto k : sol.row.support(1e-7)) ok = ok && sub.row_ids[k] < c;
    } else if (c < r) {
      cases["c<r"]++;
      for (auto k : sol.col.support(1e-7)) ok = ok && sub.col_ids[k] < r;
    } else {
      cases["r=c"]++;
      const auto rs = sol.row.support(1e-7), cs = sol.col.support(1e-7);
      ok = rs.size() == 1 && cs.size() == 1 && sub.row_ids[rs[0]] == r && sub.col_ids[cs[0]] == c;
    }
    consistent += ok ? 1 : 0;
  }
  std::string detail = " consistent=" + std::to_string(consistent) + "/200 cases:";
  for (const auto& [name, count] : cases) detail += " " + name + "=" + std::to_string(count);
  return {consistent == 200, detail};
}

Outcome c10_bitgames() {
  using games::BitGameSpec;
  bool pass = true;
  for (std::size_t bits = 1; bits <= 4; ++bits) {
    const std::size_t size = std::size_t{1} << bits;
    pass = pass && games::bitgame_build({BitGameSpec::Variant::kStochastic, bits}).game == games::make_L(size);
    pass = pass && games::bitgame_build({BitGameSpec::Variant::kPosg, bits}).game == games::make_U_T(size);
  }
  std::string detail = std::string(" matrices ") + (pass ? "equal" : "differ") + "; K:";
  for (std::size_t bits = 1; bits <= 8; ++bits) {
    for (auto variant : {BitGameSpec::Variant::kStochastic, BitGameSpec::Variant::kPosg}) {
      const auto k = games::bitgame_build({variant, bits}).clusters.clusters();
      pass = pass && k == 2 * bits + 1;
      if (variant == BitGameSpec::Variant::kStochastic) detail += " " + std::to_string(k);
    }
  }
  return {pass, detail};
}

Outcome c11_cluster_sdo() {
  const auto records = run_experiment(plan_from(
      "game = bitgame:stochastic,{n}\ngame = bitgame:posg,{n}\nalgorithm = sdo\nperturbation = uniform:-1,1\n"
      "cluster = true\ninit = worst\neps = 0.1\nsizes = 7, 8, 9, 10, 11\nreps = 10\nseed = 1\n"));
  bool pass = all_succeeded(records);
  std::string detail;
  for (const char* series : {"sdo bitgame:stochastic,{n}", "sdo bitgame:posg,{n}"}) {
    const auto means = mean_by_size(records, series);
    for (const auto& [bits, mean] : means) pass = pass && mean <= double(std::size_t{1} << bits) / 8.0;
    const double growth = worst_growth(means);
    pass = pass && growth <= 1.6;
    detail += std::string(" [") + series + "]" + describe(means) + " max ratio=" + fmt("%.3f", growth);
  }
  return {pass, detail};
}

Outcome c12_grid() {
  const auto records = run_experiment(plan_from(
      "game = grid:{n},10\nalgorithm = do, sdo\nperturbation = uniform:-0.5,0.5\ninit = first\neps = 0.1\n"
      "sizes = 4, 5, 6, 7, 8\nreps = 10\nseed = 1\n"));
  const auto dos = mean_by_size(records, "do");
  const auto sdo = mean_by_size(records, "sdo");
  const bool pass = all_succeeded(records) && sdo.at(8) <= dos.at(8);
  return {pass, " DO:" + describe(dos) + " SDO:" + describe(sdo)};
}

Outcome c13_soundness() {
  RandomSource rng(13);
  int terminated = 0, violations = 0;
  double worst_excess = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 32, n = 1 + rng.next_u64() % 32;
    const MatrixGame g = random_matrix(m, n, rng, -1.0, 1.0);
    SolverConfig cfg;
    cfg.eps = 0.05 + 0.15 * rng.next_unit();
    cfg.init_row = rng.next_u64() % m;
    cfg.init_col = rng.next_u64() % n;
    cfg.rng = RandomSource(rng.next_u64());
    switch (rng.next_u64() % 3) {
      case 0: break;
      case 1: cfg.row_perturbation = cfg.col_perturbation = PerturbationSpec::uniform(-1.0, 1.0); break;
      default: cfg.row_perturbation = cfg.col_perturbation = PerturbationSpec::gumbel(0.0, 0.5); break;
    }
    const std::uint64_t alg = rng.next_u64() % 3;
    const SolveResult r = alg == 0   ? run_fictitious_play(g, cfg)
                          : alg == 1 ? run_anticipatory_fp(g, cfg)
                                     : run_double_oracle(g, cfg);
    if (!r.terminated) continue;
    ++terminated;
    const double excess = exploitability(g, r.row, r.col) - cfg.eps;
    worst_excess = std::max(worst_excess, excess);
    violations += excess > 1e-9 ? 1 : 0;
  }
  return {violations == 0, " terminated=" + std::to_string(terminated) + "/1000 violations=" +
                               std::to_string(violations) + " max(expl-eps)=" + fmt("%.3g", worst_excess)};
}

Outcome c14_oracles() {
  RandomSource rng(14);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 4, n = 1 + rng.next_u64() % 4;
    const MatrixGame g = random_matrix(m, n, rng, -1.0, 1.0);
    worst = std::max(worst, std::abs(nash_lp(g).value - support_enum_nash(g).value));
  }
  int vectors = 0, mismatches = 0;
  for (std::size_t side = 2; side <= 5; ++side) {
    const auto built = games::grid_game_build(side, 10.0);
    const auto& grid = built.game;
    const MatrixGame& explicit_matrix = *built.matrix;
    const std::size_t paths = grid.path_count(), edges = grid.edge_count();
    for (int v = 0; v < 50; ++v) {
      std::vector<double> ew(edges, 0.0), pw(paths, 0.0);
      for (double& w : ew) w = rng.next_unit() < 0.5 ? rng.next_unit() : 0.0;
      for (double& w : pw) w = rng.next_unit() < 0.5 ? rng.next_unit() : 0.0;
      ew[rng.next_u64() % edges] += 1.0;
      pw[rng.next_u64() % paths] += 1.0;
      RandomSource unused(0);
      const WeightedProfile e(ew), p(pw);
      mismatches += games::grid_best_response_path(grid, e, PerturbationSpec::none(), unused) !=
                            best_response_row(explicit_matrix, e).index
                        ? 1
                        : 0;
      mismatches += games::grid_best_response_edge(grid, p) != best_response_col(explicit_matrix, p).index ? 1 : 0;
      vectors += 2;
    }
  }
  return {worst <= 1e-9 && mismatches == 0, " max |value gap|=" + fmt("%.3g", worst) + " grid oracle mismatches=" +
                                                std::to_string(mismatches) + "/" + std::to_string(vectors)};
}

Outcome c15_reproducible() {
  const std::vector<std::string> plans{
      "game = random:{n}\nalgorithm = fp, sfp, afp, safp\nnormalize = true\ninit = first\nsizes = 10, 20\nreps = 5\n",
      "game = morra:{n}\nalgorithm = do, sdo\nperturbation = uniform:-1,1\nnormalize = true\ninit = first\n"
      "sizes = 2, 3, 4\nreps = 5\n",
      "game = bitgame:posg,{n}\nalgorithm = sdo\ncluster = true\nsizes = 3, 5\nreps = 5\n",
      "game = grid:{n},10\nalgorithm = do, sdo\nperturbation = uniform:-0.5,0.5\nsizes = 4, 5\nreps = 5\n",
      "game = UT:{n}\nalgorithm = sfp-restart\nnormalize = true\nsizes = 8\nreps = 3\n"};
  int identical = 0;
  for (const auto& text : plans) {
    std::ostringstream a, b;
    emit_csv(run_experiment(plan_from(text)), a);
    emit_csv(run_experiment(plan_from(text)), b);
    identical += a.str() == b.str() ? 1 : 0;
  }
  return {identical == int(plans.size()),
          " identical reruns=" + std::to_string(identical) + "/" + std::to_string(plans.size())};
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) ids.insert(std::stoi(item));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if ((arg == "--only" || arg == "--known-failures") && a + 1 < argc) {
      (arg == "--only" ? only : known) = parse_ids(argv[++a]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N[,N...]] [--known-failures N[,N...]]\n", argv[0]);
      return 1;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "DO exactness on L and U", 30, c1_do_exact},
      {2, "SDO on S is logarithmic", 180, c2_sdo_on_S},
      {3, "SDO on U is logarithmic", 180, c3_sdo_on_U},
      {4, "SFP restart protocol on U^T(512)", 120, c4_restart_protocol},
      {5, "Gumbel-max matches softmax", 30, c5_gumbel_max},
      {6, "uniform noise on rows of S", 30, c6_noise_on_S},
      {7, "uniform noise on rows of U", 30, c7_noise_on_U},
      {8, "REWF self-play regret", 60, c8_rewf_regret},
      {9, "restricted equilibria of S", 60, c9_restricted_S},
      {10, "bit games equal L and U^T", 10, c10_bitgames},
      {11, "cluster SDO on bit games", 300, c11_cluster_sdo},
      {12, "SDO vs DO on grid games", 120, c12_grid},
      {13, "soundness fuzz", 120, c13_soundness},
      {14, "oracle cross-validation", 60, c14_oracles},
      {15, "reproducible experiment CSV", 60, c15_reproducible},
  };

  int failed = 0, unexpected = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string(" exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.time_limit_s) {
      out.pass = false;
      out.detail += " runtime over " + fmt("%.0f", c.time_limit_s) + " s";
    }
    std::printf("%s %2d %s:%s (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), out.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!out.pass) {
      ++failed;
      if (!known.count(c.id)) ++unexpected;
    }
  }
  std::printf("%d criteria failed, %d unexpectedly\n", failed, unexpected);
  return unexpected == 0 ? 0 : 1;
}

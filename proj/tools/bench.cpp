#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pbro/experiment.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kSolverFailure = 2;

bool any_failed(const std::vector<pbro::RunRecord>& records) {
  for (const auto& r : records) {
    if (!r.error.empty()) return true;
  }
  return false;
}

int run_plan(const std::string& plan_path, const std::string& csv_path, const std::string& svg_path, bool timing) {
  pbro::ExperimentPlan plan = pbro::parse_plan_file(plan_path);
  if (timing) plan.timing = true;
  const auto records = pbro::run_experiment(plan);
  if (csv_path.empty()) {
    pbro::emit_csv(records, std::cout);
  } else {
    pbro::emit_csv(records, std::filesystem::path(csv_path));
  }
  if (!svg_path.empty()) {
    pbro::emit_svg_plot(pbro::summarize(records), std::filesystem::path(svg_path), plan.title);
  }
  for (const auto& row : pbro::summarize(records)) {
    std::cerr << row.series << " size=" << row.size << " runs=" << row.count << " mean=" << row.mean
              << " sd=" << row.sd << '\n';
  }
  return any_failed(records) ? kSolverFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-response oracle solvers for zero-sum matrix games"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment plan and emit CSV (and optionally an SVG plot)");
  std::string plan_path;
  std::string csv_path;
  std::string svg_path;
  bool timing = false;
  run->add_option("plan", plan_path, "Plan file (key = value lines)")->required();
  run->add_option("--out", csv_path, "CSV output path (default: stdout)");
  run->add_option("--plot", svg_path, "SVG plot output path");
  run->add_flag("--timing", timing, "Record wall-clock milliseconds in the ms column");

  auto* solve = app.add_subcommand("solve", "Solve one game once and print its run record as CSV");
  std::string game;
  std::string alg = "do";
  double eps = 0.1;
  std::optional<std::string> perturb;
  std::uint64_t seed = 1;
  std::string init = "worst";
  bool normalize = false;
  bool cluster = false;
  std::size_t max_iterations = 0;
  solve->add_option("--game", game, "Game spec, e.g. L:64, blotto:5,4, bitgame:posg,6, grid:5,10")->required();
  solve->add_option("--alg", alg, "fp, sfp, afp, safp, do, sdo or sfp-restart")->capture_default_str();
  solve->add_option("--eps", eps, "Target exploitability")->capture_default_str();
  solve->add_option("--perturb", perturb, "none, uniform:a,b or gumbel:mu,beta (both players)");
  solve->add_option("--seed", seed, "Seed")->capture_default_str();
  solve->add_option("--init", init, "worst, first or k,l (1-based)")->capture_default_str();
  solve->add_option("--max-iterations", max_iterations, "Iteration cap (0: algorithm default)");
  solve->add_flag("--normalize", normalize, "Normalize payoffs to [0, 1]");
  solve->add_flag("--cluster", cluster, "Cluster perturbation (bit games, sdo)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return run_plan(plan_path, csv_path, svg_path, timing);

    std::string text = "game = " + game + "\nalgorithm = " + alg + "\neps = " + std::to_string(eps) +
                       "\nsizes = 0\nreps = 1\nseed = " + std::to_string(seed) + "\ninit = " + init +
                       "\nnormalize = " + (normalize ? "true" : "false") +
                       "\ncluster = " + (cluster ? "true" : "false") +
                       "\nmax_iterations = " + std::to_string(max_iterations) + "\n";
    if (perturb) text += "perturbation = " + *perturb + "\n";
    std::istringstream in(text);
    pbro::ExperimentPlan plan = pbro::parse_plan(in);
    plan.eps = eps;
    const auto records = pbro::run_experiment(plan);
    pbro::emit_csv(records, std::cout);
    if (any_failed(records)) {
      std::cerr << "solver failure: " << records.front().error << '\n';
      return kSolverFailure;
    }
    return 0;
  } catch (const pbro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

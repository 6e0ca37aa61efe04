#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbro/game_spec.hpp"
#include "pbro/perturbation.hpp"

namespace pbro {

enum class Algorithm { kFP, kSFP, kAFP, kSAFP, kDO, kSDO, kSFPRestart };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm alg);
bool is_stochastic(Algorithm alg);

// Thrown for malformed plans and CLI options.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct InitPolicy {
  enum class Kind { kWorst, kFirst, kExplicit };
  Kind kind = Kind::kWorst;
  std::size_t row = 0;  // 0-based, explicit only
  std::size_t col = 0;
};

// One experiment: a game family swept over sizes, one or more algorithms,
// repeated with seeds base_seed + rep.
struct ExperimentPlan {
  std::string title;
  // Generator strings; "{n}" is replaced by each size. Several games may be
  // listed (one `game =` line each).
  std::vector<std::string> games;
  std::vector<Algorithm> algorithms;
  // Unset: none for deterministic algorithms, Gumbel(0, beta) from the
  // theory parameters for sfp/safp, U(-1, 1) for sdo.
  std::optional<PerturbationSpec> row_perturbation;
  std::optional<PerturbationSpec> col_perturbation;
  double eps = 0.1;
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 10;
  std::uint64_t base_seed = 1;
  InitPolicy init;
  bool normalize = false;
  bool cluster = false;
  std::size_t max_iterations = 0;  // 0: algorithm default
  std::size_t max_restarts = 20;
  bool timing = false;  // record wall-clock ms; off keeps output byte-stable

  void validate() const;
  std::string game_for(std::size_t game, std::size_t size) const;
  // Label of one (game, algorithm) line in summaries and plots.
  std::string series(std::size_t game, Algorithm alg) const;
};

// Flat "key = value" text; '#' starts a comment. Keys: title, game (repeatable),
// algorithm (comma list), perturbation, row_perturbation, col_perturbation,
// eps, sizes (comma list), reps, seed, init (worst | first | k,l with
// 1-based indices), normalize, cluster, max_iterations, max_restarts, timing.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan parse_plan_file(const std::filesystem::path& path);

struct RunRecord {
  std::string series;  // summary label, not part of the CSV
  std::string game;
  std::string algorithm;
  std::string perturbation;
  double eps = 0.0;
  std::size_t size = 0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  bool terminated = false;
  double exploitability = 0.0;
  double ms = 0.0;
  std::string error;  // non-empty when the run failed
};

// 0-based initial strategies for one run.
std::pair<std::size_t, std::size_t> resolve_init(const ExperimentPlan& plan, const GameInstance& game);

// Noise actually used by `alg` on `game` under `plan`.
std::pair<PerturbationSpec, PerturbationSpec> resolve_perturbation(const ExperimentPlan& plan, Algorithm alg,
                                                                   const GameInstance& game);

// Builds the game when it is not supplied, then runs one algorithm once.
// Solver failures are captured in RunRecord::error.
RunRecord run_single(const ExperimentPlan& plan, std::size_t game, Algorithm alg, std::size_t size,
                     std::size_t rep, const GameInstance* shared_game = nullptr);

// All (game, algorithm, size, rep) runs, ordered by game, algorithm, size (all
// in plan order) and rep. Independent runs execute in parallel.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan);

struct SummaryRow {
  std::string series;
  std::size_t size = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for one record
};

struct MeanSd {
  double mean;
  double sd;
};
MeanSd mean_sd(const std::vector<double>& values);

// Iteration statistics per (series, size) over the successful runs.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out);
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

// Mean iterations against size, one line per series with a +-1 sd band.
// The x axis is logarithmic when the sizes form a geometric sequence.
void emit_svg_plot(const std::vector<SummaryRow>& summary, std::ostream& out, std::string_view title = {});
void emit_svg_plot(const std::vector<SummaryRow>& summary, const std::filesystem::path& path,
                   std::string_view title = {});

}  // namespace pbro

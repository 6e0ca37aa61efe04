#include "pbro/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "pbro/forecaster.hpp"
#include "pbro/solvers.hpp"

namespace pbro {
namespace {

constexpr std::uint64_t kGameStream = 0x67616d65;  // "game"

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

template <typename T>
T parse_value(std::string_view s, std::string_view key) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid value '" + std::string(s) + "' for '" + std::string(key) + "'");
  }
  return v;
}

bool parse_flag(std::string_view s, std::string_view key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("invalid flag '" + std::string(s) + "' for '" + std::string(key) + "'");
}

PerturbationSpec parse_perturbation(std::string_view s) {
  try {
    return PerturbationSpec::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string describe(const PerturbationSpec& row, const PerturbationSpec& col) {
  return row == col ? row.to_string() : row.to_string() + "/" + col.to_string();
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fp") return Algorithm::kFP;
  if (name == "sfp") return Algorithm::kSFP;
  if (name == "afp") return Algorithm::kAFP;
  if (name == "safp") return Algorithm::kSAFP;
  if (name == "do") return Algorithm::kDO;
  if (name == "sdo") return Algorithm::kSDO;
  if (name == "sfp-restart") return Algorithm::kSFPRestart;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::kFP: return "fp";
    case Algorithm::kSFP: return "sfp";
    case Algorithm::kAFP: return "afp";
    case Algorithm::kSAFP: return "safp";
    case Algorithm::kDO: return "do";
    case Algorithm::kSDO: return "sdo";
    case Algorithm::kSFPRestart: return "sfp-restart";
  }
  return "?";
}

bool is_stochastic(Algorithm alg) {
  return alg == Algorithm::kSFP || alg == Algorithm::kSAFP || alg == Algorithm::kSDO || alg == Algorithm::kSFPRestart;
}

void ExperimentPlan::validate() const {
  if (games.empty()) throw ConfigError("plan has no game");
  if (algorithms.empty()) throw ConfigError("plan has no algorithm");
  if (sizes.empty()) throw ConfigError("plan has an empty size sweep");
  if (repetitions < 1) throw ConfigError("reps must be at least 1");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (max_restarts < 1) throw ConfigError("max_restarts must be at least 1");
  for (std::size_t g = 0; g < games.size(); ++g) {
    for (std::size_t size : sizes) {
      try {
        GameSpec::parse(game_for(g, size));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
}

std::string ExperimentPlan::series(std::size_t game, Algorithm alg) const {
  std::string label(algorithm_name(alg));
  if (games.size() > 1) label += " " + games.at(game);
  return label;
}

std::string ExperimentPlan::game_for(std::size_t game, std::size_t size) const {
  std::string out = games.at(game);
  const std::string value = std::to_string(size);
  for (std::size_t pos = out.find("{n}"); pos != std::string::npos; pos = out.find("{n}", pos + value.size())) {
    out.replace(pos, 3, value);
  }
  return out;
}

ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));

    if (key == "title") {
      plan.title = value;
    } else if (key == "game") {
      plan.games.emplace_back(value);
    } else if (key == "algorithm" || key == "algorithms") {
      plan.algorithms.clear();
      for (auto name : split_list(value)) plan.algorithms.push_back(parse_algorithm(name));
    } else if (key == "perturbation") {
      plan.row_perturbation = plan.col_perturbation = parse_perturbation(value);
    } else if (key == "row_perturbation") {
      plan.row_perturbation = parse_perturbation(value);
    } else if (key == "col_perturbation") {
      plan.col_perturbation = parse_perturbation(value);
    } else if (key == "eps") {
      plan.eps = parse_value<double>(value, key);
    } else if (key == "sizes") {
      plan.sizes.clear();
      for (auto s : split_list(value)) plan.sizes.push_back(parse_value<std::size_t>(s, key));
    } else if (key == "reps") {
      plan.repetitions = parse_value<std::size_t>(value, key);
    } else if (key == "seed") {
      plan.base_seed = parse_value<std::uint64_t>(value, key);
    } else if (key == "init") {
      if (value == "worst") {
        plan.init = {InitPolicy::Kind::kWorst};
      } else if (value == "first") {
        plan.init = {InitPolicy::Kind::kFirst};
      } else {
        const auto parts = split_list(value);
        if (parts.size() != 2) throw ConfigError("init must be worst, first or k,l");
        const auto k = parse_value<std::size_t>(parts[0], key);
        const auto l = parse_value<std::size_t>(parts[1], key);
        if (k < 1 || l < 1) throw ConfigError("explicit init indices are 1-based");
        plan.init = {InitPolicy::Kind::kExplicit, k - 1, l - 1};
      }
    } else if (key == "normalize") {
      plan.normalize = parse_flag(value, key);
    } else if (key == "cluster") {
      plan.cluster = parse_flag(value, key);
    } else if (key == "max_iterations") {
      plan.max_iterations = parse_value<std::size_t>(value, key);
    } else if (key == "max_restarts") {
      plan.max_restarts = parse_value<std::size_t>(value, key);
    } else if (key == "timing") {
      plan.timing = parse_flag(value, key);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  plan.validate();
  return plan;
}

ExperimentPlan parse_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open plan file " + path.string());
  try {
    return parse_plan(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> resolve_init(const ExperimentPlan& plan, const GameInstance& game) {
  switch (plan.init.kind) {
    case InitPolicy::Kind::kWorst: return worst_start(game);
    case InitPolicy::Kind::kFirst: return {0, 0};
    case InitPolicy::Kind::kExplicit:
      if (plan.init.row >= game.rows() || plan.init.col >= game.cols()) {
        throw ConfigError("explicit initial strategy out of range for " + game.spec().text);
      }
      return {plan.init.row, plan.init.col};
  }
  return {0, 0};
}

std::pair<PerturbationSpec, PerturbationSpec> resolve_perturbation(const ExperimentPlan& plan, Algorithm alg,
                                                                   const GameInstance& game) {
  if (!is_stochastic(alg)) return {PerturbationSpec::none(), PerturbationSpec::none()};
  PerturbationSpec fallback;
  if (alg == Algorithm::kSDO) {
    fallback = PerturbationSpec::uniform(-1.0, 1.0);
  } else {
    const double n = std::max<double>(2.0, static_cast<double>(std::max(game.rows(), game.cols())));
    fallback = PerturbationSpec::gumbel(0.0, sfp_theory_params(n, plan.eps).beta);
  }
  if (alg == Algorithm::kSFPRestart) return {fallback, fallback};
  return {plan.row_perturbation.value_or(fallback), plan.col_perturbation.value_or(fallback)};
}

RunRecord run_single(const ExperimentPlan& plan, std::size_t game_index, Algorithm alg, std::size_t size,
                     std::size_t rep, const GameInstance* shared_game) {
  RunRecord rec;
  rec.series = plan.series(game_index, alg);
  rec.game = plan.game_for(game_index, size);
  rec.algorithm = algorithm_name(alg);
  rec.eps = plan.eps;
  rec.size = size;
  rec.rep = rep;
  rec.seed = plan.base_seed + rep;

  const auto start = std::chrono::steady_clock::now();
  try {
    const RandomSource run(rec.seed);
    std::optional<GameInstance> own;
    if (!shared_game) {
      own.emplace(build_game(GameSpec::parse(rec.game), run.derive(kGameStream)));
      if (plan.normalize) own->normalize();
      shared_game = &*own;
    }
    const GameInstance& game = *shared_game;
    const auto [row_noise, col_noise] = resolve_perturbation(plan, alg, game);
    rec.perturbation = describe(row_noise, col_noise);

    SolverConfig cfg;
    cfg.eps = plan.eps;
    cfg.max_iterations = plan.max_iterations;
    std::tie(cfg.init_row, cfg.init_col) = resolve_init(plan, game);
    cfg.row_perturbation = row_noise;
    cfg.col_perturbation = col_noise;
    cfg.rng = run;

    const bool clustered = plan.cluster && alg == Algorithm::kSDO;
    const auto oracles = game.oracles(clustered);
    std::optional<SolveResult> result;
    switch (alg) {
      case Algorithm::kFP:
      case Algorithm::kSFP:
        result = run_fictitious_play(game.matrix(), cfg);
        break;
      case Algorithm::kAFP:
      case Algorithm::kSAFP:
        result = run_anticipatory_fp(game.matrix(), cfg);
        break;
      case Algorithm::kDO:
      case Algorithm::kSDO:
        result = run_double_oracle(*oracles, cfg);
        break;
      case Algorithm::kSFPRestart:
        result = sfp_restart_protocol(game.matrix(), plan.eps, run, plan.max_restarts);
        break;
    }
    rec.iterations = result->iterations;
    rec.terminated = result->terminated;
    rec.exploitability = exploitability(*oracles, result->row, result->col);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  if (plan.timing) {
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const std::size_t reps = plan.repetitions;
  const std::size_t algs = plan.algorithms.size();
  const std::size_t sizes = plan.sizes.size();
  std::vector<RunRecord> records(plan.games.size() * algs * sizes * reps);
  std::vector<std::string> config_errors(records.size());

  for (std::size_t g = 0; g < plan.games.size(); ++g) {
    for (std::size_t s = 0; s < sizes; ++s) {
      const std::size_t size = plan.sizes[s];
      const GameSpec spec = GameSpec::parse(plan.game_for(g, size));
      // Deterministic families are built once per size and shared by all runs.
      std::optional<GameInstance> shared;
      std::string build_error;
      if (!spec.seeded()) {
        try {
          shared.emplace(build_game(spec, RandomSource(plan.base_seed)));
          if (plan.normalize) shared->normalize();
        } catch (const std::exception& e) {
          build_error = e.what();
        }
      }

#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t job = 0; job < algs * reps; ++job) {
        const std::size_t a = job / reps;
        const std::size_t rep = job % reps;
        const std::size_t slot = ((g * algs + a) * sizes + s) * reps + rep;
        RunRecord& rec = records[slot];
        if (!build_error.empty()) {
          rec.series = plan.series(g, plan.algorithms[a]);
          rec.game = plan.game_for(g, size);
          rec.algorithm = algorithm_name(plan.algorithms[a]);
          rec.eps = plan.eps;
          rec.size = size;
          rec.rep = rep;
          rec.seed = plan.base_seed + rep;
          rec.error = build_error;
          continue;
        }
        try {
          rec = run_single(plan, g, plan.algorithms[a], size, rep, shared ? &*shared : nullptr);
        } catch (const std::exception& e) {
          config_errors[slot] = e.what();
        }
      }
    }
  }
  for (const auto& e : config_errors) {
    if (!e.empty()) throw ConfigError(e);
  }
  return records;
}

MeanSd mean_sd(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<std::pair<std::string, std::size_t>> order;
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> groups;
  for (const RunRecord& r : records) {
    if (!r.error.empty()) continue;
    const auto key = std::make_pair(r.series.empty() ? r.algorithm : r.series, r.size);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(static_cast<double>(r.iterations));
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& values = groups[key];
    const MeanSd s = mean_sd(values);
    out.push_back({key.first, key.second, values.size(), s.mean, s.sd});
  }
  return out;
}

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "game,algorithm,perturbation,eps,size,rep,seed,iterations,terminated,exploitability,ms\n";
  for (const RunRecord& r : records) {
    out << csv_field(r.game) << ',' << csv_field(r.algorithm) << ',' << csv_field(r.perturbation) << ','
        << format_real(r.eps) << ',' << r.size << ',' << r.rep << ',' << r.seed << ',' << r.iterations << ','
        << (r.terminated ? "true" : "false") << ','
        << (r.error.empty() ? format_real(r.exploitability) : csv_field("error: " + r.error)) << ','
        << format_real(std::round(r.ms * 1000.0) / 1000.0) << '\n';
  }
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ostringstream buffer;
  emit_csv(records, buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV to " + path.string());
  out << buffer.str();
  if (!out) throw std::runtime_error("failed writing CSV to " + path.string());
}

}  // namespace pbro

#include "experiment.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>

#include "game_file.hpp"
#include "scg/applications/fermat_weber.hpp"
#include "scg/applications/metric_learning.hpp"
#include "scg/applications/online_location.hpp"
#include "scg/error.hpp"
#include "scg/game.hpp"
#include "scg/rng.hpp"

namespace scg::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kInstanceStream = 0;
constexpr std::uint64_t kSamplingStream = 1;
constexpr double kClusterSeparation = 3.0;

struct Prepared {
  BilinearZeroSumGame game;
  json details = json::object();
};

Prepared prepare_static(const RunConfig& config, std::uint64_t seed, const std::optional<LoadedGame>& file_game) {
  switch (config.experiment) {
    case Experiment::matching_pennies:
      return {matching_pennies()};
    case Experiment::game_file: {
      Prepared p{file_game->game};
      p.details["lipschitz_estimated"] = file_game->lipschitz_estimated;
      return p;
    }
    case Experiment::metric_learning: {
      metric_learning::LabeledDataset data;
      json details;
      if (config.data.empty()) {
        auto rng = make_rng(seed, kInstanceStream);
        data = metric_learning::synthetic_clusters(config.synthetic_classes, config.synthetic_per_class,
                                                   config.synthetic_dim, kClusterSeparation, rng);
        details["dataset"] = "synthetic";
      } else {
        data = metric_learning::load_labeled_csv(config.data);
        details["dataset"] = config.data.string();
      }
      metric_learning::standardize(data);
      auto rng = make_rng(seed, kSamplingStream);
      const auto instance = metric_learning::sample_pairs(data, config.similar_pairs, config.dissimilar_pairs, rng);
      details["similar_pairs"] = instance.similar.size();
      details["dissimilar_pairs"] = instance.dissimilar.size();
      details["ridge"] = config.ridge;
      return {metric_learning::build_game(instance, config.ridge), details};
    }
    case Experiment::fermat_weber: {
      auto rng = make_rng(seed, kInstanceStream);
      const auto instance = fermat_weber::synthetic_instance(config.fw_dim, config.fw_targets, config.fw_radius, rng);
      json details{{"dim", config.fw_dim}, {"targets", config.fw_targets}, {"radius", config.fw_radius}};
      return {fermat_weber::build_game(instance), details};
    }
    case Experiment::online_fl:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "not a static game experiment");
}

std::size_t resolve_record_every(const RunConfig& config, std::size_t rounds) {
  if (config.record_every > 0) return config.record_every;
  return std::max<std::size_t>(1, (rounds + 499) / 500);
}

std::size_t require_rounds(const Schedule& schedule, const RunConfig& config) {
  if (config.rounds) return *config.rounds;
  if (schedule.rounds == 0) {
    throw Error(ErrorCode::invalid_argument,
                "the scheduled horizon is zero (both strategy sets are singletons); pass --T explicitly");
  }
  return schedule.rounds;
}

void require_finite(double v, const char* what, std::size_t t) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::non_finite, std::string("non-finite ") + what + " at iteration " + std::to_string(t));
  }
}

json run_static(const RunConfig& config, std::uint64_t seed, const std::optional<LoadedGame>& file_game,
                std::vector<RunSeries>& out) {
  const auto prepared = prepare_static(config, seed, file_game);
  const auto& game = prepared.game;
  const auto schedule = saddle_point_schedule(game, config.eps);
  const double eta = config.step_size.value_or(schedule.step_size);
  const std::size_t rounds = require_rounds(schedule, config);

  SelfPlayOptions options;
  options.rounds = rounds;
  options.record_every = resolve_record_every(config, rounds);

  json entry = prepared.details;
  entry["seed"] = seed;
  entry["step_size"] = eta;
  entry["step_size_source"] = config.step_size ? "user" : "schedule";
  entry["rounds"] = rounds;
  entry["rounds_source"] = config.rounds ? "user" : "schedule";
  entry["record_every"] = options.record_every;
  entry["lipschitz"] = {game.lipschitz_x(), game.lipschitz_y()};
  entry["ranks"] = {game.x_space().cone().rank(), game.y_space().cone().rank()};
  entry["entropy_ranges"] = {game.x_space().entropy_range(), game.y_space().entropy_range()};
  entry["cones"] = {game.x_space().cone().to_string(), game.y_space().cone().to_string()};

  for (bool optimistic : config.algorithms) {
    const LearnerConfig cx(game.x_space(), eta, optimistic);
    const LearnerConfig cy(game.y_space(), eta, optimistic);
    const auto trace = self_play(game, cx, cy, options);
    RunSeries series{optimistic, seed, {}};
    for (const auto& cp : trace.checkpoints) {
      MetricRow row;
      row.iteration = cp.t;
      row.gap = cp.gap;
      row.regret_sum_scaled = cp.scaled_regret_sum();
      row.primal_objective = cp.primal_objective.value_or(cp.primal);
      require_finite(*row.primal_objective, "primal objective", cp.t);
      series.rows.push_back(row);
    }
    out.push_back(std::move(series));
  }
  return entry;
}

json run_online(const RunConfig& config, std::uint64_t seed, std::vector<RunSeries>& out) {
  online_location::StreamParams params;
  params.location_dim = config.ofl_location_dim;
  params.residual_dim = config.ofl_residual_dim;
  params.radius = config.ofl_radius;
  params.rho = config.ofl_rho;
  params.sigma = config.ofl_sigma;
  params.seed = derive_seed(seed, kInstanceStream);

  // The map has unit spectral norm, so the fixed-game constants apply with a
  // single residual block.
  const double lipschitz = params.radius;
  const auto schedule = saddle_point_schedule(lipschitz, lipschitz, 2, 2, config.eps);
  const double eta = config.step_size.value_or(schedule.step_size);
  const std::size_t rounds = require_rounds(schedule, config);
  params.horizon = rounds;
  const std::size_t every = resolve_record_every(config, rounds);

  const auto stream = online_location::generate_stream(params);
  const auto xc = ConeDescriptor::spin(params.location_dim + 1);
  const auto yc = ConeDescriptor::spin(params.residual_dim + 1);

  for (bool optimistic : config.algorithms) {
    const auto result = online_location::online_self_play(stream, params.radius, LearnerConfig(xc, eta, optimistic),
                                                          LearnerConfig(yc, eta, optimistic));
    RunSeries series{optimistic, seed, {}};
    for (std::size_t t = 1; t <= rounds; ++t) {
      if (t % every != 0 && t != rounds) continue;
      const double v = result.scaled_regret_sum[t - 1];
      require_finite(v, "scaled regret sum", t);
      MetricRow row;
      row.iteration = t;
      row.regret_sum_scaled = v;
      series.rows.push_back(row);
    }
    out.push_back(std::move(series));
  }

  return json{{"seed", seed},
              {"step_size", eta},
              {"step_size_source", config.step_size ? "user" : "schedule"},
              {"rounds", rounds},
              {"rounds_source", config.rounds ? "user" : "schedule"},
              {"record_every", every},
              {"lipschitz", {lipschitz, lipschitz}},
              {"ranks", {2, 2}},
              {"cones", {xc.to_string(), yc.to_string()}},
              {"stream", {{"location_dim", params.location_dim},
                          {"residual_dim", params.residual_dim},
                          {"radius", params.radius},
                          {"rho", params.rho},
                          {"sigma", params.sigma}}}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  double stddev() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0; }
};

std::string moments_fields(const Moments& m) {
  if (m.n == 0) return ",";
  return format_double(m.mean) + "," + format_double(m.stddev());
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "game-file") return Experiment::game_file;
  if (name == "matching-pennies") return Experiment::matching_pennies;
  if (name == "metric-learning") return Experiment::metric_learning;
  if (name == "fermat-weber") return Experiment::fermat_weber;
  if (name == "online-fl") return Experiment::online_fl;
  throw Error(ErrorCode::invalid_argument, "unknown experiment \"" + name + "\"");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::game_file:
      return "game-file";
    case Experiment::matching_pennies:
      return "matching-pennies";
    case Experiment::metric_learning:
      return "metric-learning";
    case Experiment::fermat_weber:
      return "fermat-weber";
    case Experiment::online_fl:
      return "online-fl";
  }
  return "unknown";
}

std::string algorithm_name(bool optimistic) { return optimistic ? "oscmwu" : "scmwu"; }

std::string series_file_name(const RunSeries& series) {
  return algorithm_name(series.optimistic) + "_seed" + std::to_string(series.seed) + ".csv";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate(const RunConfig& config) {
  if (config.algorithms.empty()) throw Error(ErrorCode::invalid_argument, "no algorithm selected");
  if (config.seeds.empty()) throw Error(ErrorCode::invalid_argument, "no seeds given");
  if (config.rounds && *config.rounds < 1) throw Error(ErrorCode::invalid_argument, "T must be at least 1");
  if (!config.rounds && !(config.eps > 0.0 && std::isfinite(config.eps))) {
    throw Error(ErrorCode::invalid_argument, "eps must be positive when T is auto");
  }
  if (config.step_size && !(*config.step_size > 0.0 && std::isfinite(*config.step_size))) {
    throw Error(ErrorCode::invalid_argument, "eta must be positive and finite");
  }
  if (config.experiment == Experiment::game_file && config.game.empty()) {
    throw Error(ErrorCode::invalid_argument, "--game is required for the game-file experiment");
  }
  if (!config.game.empty() && !std::filesystem::exists(config.game)) {
    throw Error(ErrorCode::io, "game file not found: " + config.game.string());
  }
  if (!config.data.empty() && !std::filesystem::exists(config.data)) {
    throw Error(ErrorCode::io, "dataset not found: " + config.data.string());
  }
  if (config.out.empty()) throw Error(ErrorCode::invalid_argument, "--out must not be empty");
}

RunResult execute(const RunConfig& config) {
  validate(config);
  std::optional<LoadedGame> file_game;
  if (config.experiment == Experiment::game_file) file_game = load_game_file(config.game);

  RunResult result;
  json runs = json::array();
  for (std::uint64_t seed : config.seeds) {
    if (config.experiment == Experiment::online_fl) {
      runs.push_back(run_online(config, seed, result.series));
    } else {
      runs.push_back(run_static(config, seed, file_game, result.series));
    }
  }

  json algorithms = json::array();
  for (bool a : config.algorithms) algorithms.push_back(algorithm_name(a));
  json files = json::array();
  for (const auto& s : result.series) files.push_back(series_file_name(s));

  const auto& first = runs.front();
  result.manifest = json{
      {"version", SCG_VERSION_STRING},
      {"experiment", to_string(config.experiment)},
      {"algorithms", algorithms},
      {"seeds", config.seeds},
      {"seed_scheme",
       "per-run streams are mt19937_64 seeded with splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15); "
       "k = 0 draws the instance, k = 1 samples pairs"},
      {"eps", config.eps},
      {"step_size", first.at("step_size")},
      {"rounds", first.at("rounds")},
      {"lipschitz", first.at("lipschitz")},
      {"ranks", first.at("ranks")},
      {"runs", runs},
      {"files", files},
      {"aggregate", "aggregate.csv"},
      {"created_utc", utc_timestamp()},
  };
  if (!config.game.empty()) result.manifest["game"] = config.game.string();
  return result;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
  std::filesystem::create_directories(config.out);
  const std::string header = "iteration,duality_gap_avg_iterates,regret_sum_scaled,primal_objective\n";

  // algorithm -> iteration -> (gap, regret, primal)
  std::map<std::string, std::map<std::size_t, std::array<Moments, 3>>> agg;
  for (const auto& s : result.series) {
    std::string body = header;
    auto& per_iter = agg[algorithm_name(s.optimistic)];
    for (const auto& r : s.rows) {
      body += std::to_string(r.iteration) + "," + optional_field(r.gap) + "," + format_double(r.regret_sum_scaled) +
              "," + optional_field(r.primal_objective) + "\n";
      auto& m = per_iter[r.iteration];
      if (r.gap) m[0].add(*r.gap);
      m[1].add(r.regret_sum_scaled);
      if (r.primal_objective) m[2].add(*r.primal_objective);
    }
    write_file(config.out / series_file_name(s), body);
  }

  std::string aggregate =
      "algorithm,iteration,runs,duality_gap_mean,duality_gap_std,regret_sum_scaled_mean,regret_sum_scaled_std,"
      "primal_objective_mean,primal_objective_std\n";
  for (const auto& [name, per_iter] : agg) {
    for (const auto& [t, m] : per_iter) {
      aggregate += csv_field(name) + "," + std::to_string(t) + "," + std::to_string(m[1].n) + "," +
                   moments_fields(m[0]) + "," + moments_fields(m[1]) + "," + moments_fields(m[2]) + "\n";
    }
  }
  write_file(config.out / "aggregate.csv", aggregate);
  write_file(config.out / "manifest.json", result.manifest.dump(2) + "\n");
}

}  // namespace scg::cli

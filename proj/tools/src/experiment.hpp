#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace scg::cli {

enum class Experiment { game_file, matching_pennies, metric_learning, fermat_weber, online_fl };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct RunConfig {
  Experiment experiment = Experiment::matching_pennies;
  /// Learners to run; true selects OSCMWU, false SCMWU.
  std::vector<bool> algorithms{true};
  /// Empty means the schedule's step size.
  std::optional<double> step_size;
  /// Empty means the schedule's horizon for `eps`.
  std::optional<std::size_t> rounds;
  double eps = 0.05;
  std::vector<std::uint64_t> seeds{0};
  /// 0 picks about 500 checkpoints.
  std::size_t record_every = 0;
  std::filesystem::path data;
  std::filesystem::path game;
  std::filesystem::path out = "scg-out";

  // metric-learning
  std::size_t similar_pairs = 40;
  std::size_t dissimilar_pairs = 40;
  std::size_t synthetic_classes = 3;
  std::size_t synthetic_per_class = 30;
  std::size_t synthetic_dim = 4;
  double ridge = 1e-8;

  // fermat-weber
  std::size_t fw_dim = 20;
  std::size_t fw_targets = 50;
  double fw_radius = 5.0;

  // online-fl
  std::size_t ofl_location_dim = 10;
  std::size_t ofl_residual_dim = 10;
  double ofl_radius = 1.0;
  double ofl_rho = 0.6;
  double ofl_sigma = 0.12;
};

/// Throws scg::Error on an invalid combination of options.
void validate(const RunConfig& config);

/// One metrics row. Absent values are written as empty CSV fields.
struct MetricRow {
  std::size_t iteration = 0;
  std::optional<double> gap;
  double regret_sum_scaled = 0.0;
  std::optional<double> primal_objective;
};

struct RunSeries {
  bool optimistic = true;
  std::uint64_t seed = 0;
  std::vector<MetricRow> rows;
};

struct RunResult {
  std::vector<RunSeries> series;
  nlohmann::json manifest;
};

/// Executes every (algorithm, seed) pair in memory. Nothing is written.
RunResult execute(const RunConfig& config);

/// Writes per-run CSVs, the aggregate CSV and manifest.json into config.out.
void write_outputs(const RunConfig& config, const RunResult& result);

std::string algorithm_name(bool optimistic);
std::string series_file_name(const RunSeries& series);

/// "%.17g", with nan/inf spelled as such.
std::string format_double(double v);

}  // namespace scg::cli

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "experiment.hpp"
#include "scg/error.hpp"

namespace scg::cli {

namespace {

using nlohmann::json;

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::invalid_argument, std::string("invalid ") + what + ": \"" + text + "\"");
  }
  return value;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(parse_number<std::uint64_t>(item, "seed"));
  }
  if (seeds.empty()) throw Error(ErrorCode::invalid_argument, "no seeds given");
  return seeds;
}

std::vector<bool> parse_algorithms(const std::string& text) {
  if (text == "oscmwu") return {true};
  if (text == "scmwu") return {false};
  if (text == "both") return {false, true};
  throw Error(ErrorCode::invalid_argument, "unknown algorithm \"" + text + "\"");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double field_double(const std::string& s, const std::string& file) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, file + ": bad number \"" + s + "\"");
  }
}

}  // namespace

VerifyReport verify_outputs(const std::filesystem::path& dir, double tol) {
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw Error(ErrorCode::io, "no manifest.json in " + dir.string());
  json manifest;
  try {
    manifest = json::parse(mf);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("manifest.json: ") + e.what());
  }

  VerifyReport report;
  for (const auto& name_node : manifest.at("files")) {
    const auto name = name_node.get<std::string>();
    std::ifstream in(dir / name);
    if (!in) throw Error(ErrorCode::io, "missing run file " + name);
    ++report.files;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::parse, name + ": empty file");
    const auto header = split_csv_line(line);
    if (header.size() != 4 || header[0] != "iteration" || header[1] != "duality_gap_avg_iterates" ||
        header[2] != "regret_sum_scaled") {
      throw Error(ErrorCode::parse, name + ": unexpected header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv_line(line);
      if (f.size() != 4) throw Error(ErrorCode::parse, name + ": expected 4 fields");
      ++report.rows;
      if (f[1].empty()) continue;
      ++report.checked;
      const double gap = field_double(f[1], name);
      const double bound = field_double(f[2], name);
      if (!(gap >= -tol && gap <= bound + tol)) {
        report.violations.push_back({name, static_cast<std::size_t>(field_double(f[0], name)), gap, bound});
      }
    }
  }
  return report;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saddle points of symmetric cone games by (optimistic) multiplicative weights", "scg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SCG_VERSION_STRING));

  RunConfig config;
  std::string experiment = "matching-pennies";
  std::string algo = "oscmwu";
  std::string eta = "auto";
  std::string rounds = "auto";
  std::string seeds = "0";
  std::string data, game, out_dir = config.out.string();

  auto* run = app.add_subcommand("run", "Run self-play and write metrics CSVs");
  run->add_option("--experiment", experiment,
                  "game-file | matching-pennies | metric-learning | fermat-weber | online-fl")
      ->capture_default_str();
  run->add_option("--algo", algo, "scmwu | oscmwu | both")->capture_default_str();
  run->add_option("--eta", eta, "step size or auto")->capture_default_str();
  run->add_option("--T", rounds, "number of rounds or auto")->capture_default_str();
  run->add_option("--eps", config.eps, "target duality gap for auto schedules")->capture_default_str();
  run->add_option("--seeds", seeds, "comma separated seeds")->capture_default_str();
  run->add_option("--record-every", config.record_every, "checkpoint spacing (0 = about 500 rows)")
      ->capture_default_str();
  run->add_option("--data", data, "labeled CSV dataset (metric-learning)");
  run->add_option("--game", game, "JSON game file (game-file)");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--similar", config.similar_pairs, "similar pairs (metric-learning)")->capture_default_str();
  run->add_option("--dissimilar", config.dissimilar_pairs, "dissimilar pairs (metric-learning)")
      ->capture_default_str();
  run->add_option("--ridge", config.ridge, "ridge added before whitening (metric-learning)")->capture_default_str();
  run->add_option("--dim", config.fw_dim, "location dimension (fermat-weber)")->capture_default_str();
  run->add_option("--targets", config.fw_targets, "number of targets (fermat-weber)")->capture_default_str();
  run->add_option("--radius", config.fw_radius, "ball radius (fermat-weber)")->capture_default_str();
  run->add_option("--stream-d", config.ofl_location_dim, "location dimension (online-fl)")->capture_default_str();
  run->add_option("--stream-m", config.ofl_residual_dim, "residual dimension (online-fl)")->capture_default_str();
  run->add_option("--stream-radius", config.ofl_radius, "ball radius (online-fl)")->capture_default_str();
  run->add_option("--rho", config.ofl_rho, "demand autocorrelation (online-fl)")->capture_default_str();
  run->add_option("--sigma", config.ofl_sigma, "demand innovation scale (online-fl)")->capture_default_str();

  std::string verify_dir;
  double verify_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "Check the gap-regret inequality on a run's CSVs");
  verify->add_option("dir", verify_dir, "output directory of a run")->required();
  verify->add_option("--tol", verify_tol, "slack")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << SCG_VERSION_STRING << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return 2;
  }

  try {
    if (run->parsed()) {
      config.experiment = parse_experiment(experiment);
      config.algorithms = parse_algorithms(algo);
      if (eta != "auto") config.step_size = parse_number<double>(eta, "eta");
      if (rounds != "auto") config.rounds = parse_number<std::size_t>(rounds, "T");
      config.seeds = parse_seeds(seeds);
      config.data = data;
      config.game = game;
      config.out = out_dir;
      const auto result = execute(config);
      write_outputs(config, result);
      out << json{{"out", config.out.string()},
                  {"files", result.manifest.at("files")},
                  {"step_size", result.manifest.at("step_size")},
                  {"rounds", result.manifest.at("rounds")}}
                 .dump()
          << "\n";
      return 0;
    }
    const auto report = verify_outputs(verify_dir, verify_tol);
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"file", v.file}, {"iteration", v.iteration}, {"gap", v.gap},
                            {"regret_sum_scaled", v.regret_sum_scaled}});
    }
    out << json{{"files", report.files}, {"rows", report.rows}, {"checked", report.checked},
                {"violations", violations}}
               .dump()
        << "\n";
    return report.violations.empty() ? 0 : 3;
  } catch (const Error& e) {
    report_error(err, std::string(to_string(e.code())), e.what());
    return e.code() == ErrorCode::invalid_argument ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    report_error(err, "parse", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace scg::cli

#include "storavail/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "storavail/presets.hpp"

namespace storavail {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      fail(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + key, "must be a number");
  return obj[key].get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const std::string& key,
                         std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(where + key, "must be an integer");
  return obj[key].get<std::int64_t>();
}

std::vector<double> get_grid(const json& obj, const std::string& where, const std::string& key,
                             std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_array() || obj[key].empty()) fail(where + key, "must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) fail(where + key, "entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

FailureDistribution parse_distribution(const json& obj, const std::string& where) {
  check_keys(obj, where, {"kind", "rate", "shape", "scale", "mean_hours"});
  if (!obj.contains("kind") || !obj["kind"].is_string()) fail(where + ".kind", "must be a string");
  const std::string kind = obj["kind"].get<std::string>();
  try {
    if (kind == "exponential") {
      if (!obj.contains("rate")) fail(where + ".rate", "required for exponential");
      return FailureDistribution::exponential(obj["rate"].get<double>());
    }
    if (kind == "weibull") {
      if (!obj.contains("shape")) fail(where + ".shape", "required for weibull");
      const double shape = obj["shape"].get<double>();
      if (obj.contains("scale") && obj.contains("mean_hours")) {
        fail(where, "give either scale or mean_hours, not both");
      }
      if (obj.contains("scale")) return FailureDistribution::weibull(shape, obj["scale"].get<double>());
      if (obj.contains("mean_hours")) {
        return FailureDistribution::weibull_with_mean(shape, obj["mean_hours"].get<double>());
      }
      fail(where, "weibull needs scale or mean_hours");
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where + ".kind", "must be \"exponential\" or \"weibull\"");
}

RaidParameters parse_parameters(const json& doc) {
  RaidParameters p = presets::paper_sec5();
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) fail("preset", "must be a string");
    const auto name = doc["preset"].get<std::string>();
    const auto preset = presets::by_name(name);
    if (!preset) fail("preset", "unknown preset '" + name + "'");
    p = *preset;
  }
  if (!doc.contains("parameters")) return p;
  const json& obj = doc["parameters"];
  if (!obj.is_object()) fail("parameters", "must be an object");
  const std::string where = "parameters.";
  check_keys(obj, "parameters",
             {"data_disks", "parity_disks", "lambda", "mu_df", "mu_ddf", "mu_s", "mu_he",
              "lambda_crash", "hep"});
  p.data_disks = static_cast<int>(get_integer(obj, where, "data_disks", p.data_disks));
  p.parity_disks = static_cast<int>(get_integer(obj, where, "parity_disks", p.parity_disks));
  p.lambda = get_number(obj, where, "lambda", p.lambda);
  p.mu_df = get_number(obj, where, "mu_df", p.mu_df);
  p.mu_ddf = get_number(obj, where, "mu_ddf", p.mu_ddf);
  p.mu_s = get_number(obj, where, "mu_s", p.mu_s);
  p.mu_he = get_number(obj, where, "mu_he", p.mu_he);
  p.lambda_crash = get_number(obj, where, "lambda_crash", p.lambda_crash);
  p.hep = get_number(obj, where, "hep", p.hep);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail("parameters", e.what());
  }
  return p;
}

SimConfig parse_simulation(const json& doc) {
  SimConfig cfg;
  if (!doc.contains("simulation")) return cfg;
  const json& obj = doc["simulation"];
  if (!obj.is_object()) fail("simulation", "must be an object");
  const std::string where = "simulation.";
  check_keys(obj, "simulation",
             {"mission_time_hours", "iterations", "confidence_level", "master_seed",
              "repair_time", "ttf"});
  cfg.mission_time_hours = get_number(obj, where, "mission_time_hours", cfg.mission_time_hours);
  cfg.iterations = get_integer(obj, where, "iterations", cfg.iterations);
  cfg.confidence_level = get_number(obj, where, "confidence_level", cfg.confidence_level);
  cfg.master_seed =
      static_cast<std::uint64_t>(get_integer(obj, where, "master_seed",
                                             static_cast<std::int64_t>(cfg.master_seed)));
  if (obj.contains("repair_time")) {
    const json& rt = obj["repair_time"];
    if (!rt.is_object()) fail("simulation.repair_time", "must be an object");
    check_keys(rt, "simulation.repair_time", {"kind", "hours"});
    const std::string kind = rt.value("kind", std::string{});
    if (kind == "exponential") {
      cfg.repair_time = RepairTimeModel::exponential();
    } else if (kind == "fixed") {
      if (!rt.contains("hours")) fail("simulation.repair_time.hours", "required for fixed");
      cfg.repair_time = RepairTimeModel::fixed(rt["hours"].get<double>());
    } else {
      fail("simulation.repair_time.kind", "must be \"exponential\" or \"fixed\"");
    }
  }
  if (obj.contains("ttf")) {
    if (!obj["ttf"].is_object()) fail("simulation.ttf", "must be an object");
    cfg.ttf = parse_distribution(obj["ttf"], "simulation.ttf");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail("simulation", e.what());
  }
  return cfg;
}

std::vector<double> default_sweep_lambda_grid() {
  // 1e-7 .. 1e-4, four points per decade.
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(std::pow(10.0, -7.0 + k / 4.0));
  return grid;
}

void check_grid_values(const std::vector<double>& grid, const std::string& field, bool is_hep) {
  for (double v : grid) {
    if (is_hep) {
      if (!(v >= 0.0 && v < 1.0)) fail(field, "hep values must lie in [0, 1)");
    } else if (!(v > 0.0) || !std::isfinite(v)) {
      fail(field, "rates must be positive");
    }
  }
}

}  // namespace

std::string command_name(Command cmd) {
  switch (cmd) {
    case Command::Solve: return "solve";
    case Command::Simulate: return "simulate";
    case Command::Validate: return "validate";
    case Command::Sweep: return "sweep";
    case Command::Compare: return "compare";
    case Command::ComparePolicy: return "compare-policy";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::from_json(const json& doc, Command cmd) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(doc, "",
             {"preset", "parameters", "simulation", "model", "validate", "sweep", "compare",
              "compare_policy", "output"});

  ExperimentConfig cfg;
  cfg.command = cmd;
  cfg.parameters = parse_parameters(doc);
  cfg.simulation = parse_simulation(doc);

  if (doc.contains("model")) {
    if (!doc["model"].is_string()) fail("model", "must be a string");
    cfg.model = doc["model"].get<std::string>();
  }
  if (!is_known_model(cfg.model)) {
    std::string names;
    for (const auto& n : known_models()) names += (names.empty() ? "" : ", ") + n;
    fail("model", "unknown model '" + cfg.model + "' (known: " + names + ")");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) fail("output", "must be a string");
    cfg.output_path = doc["output"].get<std::string>();
  }

  switch (cmd) {
    case Command::Solve:
    case Command::Simulate:
      break;
    case Command::Validate: {
      cfg.lambda_grid = {1e-6, 1e-5, 1e-4};
      cfg.hep_grid = {0.0, 0.001, 0.01};
      if (doc.contains("validate")) {
        const json& obj = doc["validate"];
        if (!obj.is_object()) fail("validate", "must be an object");
        check_keys(obj, "validate", {"lambda_grid", "hep_grid", "markov_mu_df_scale"});
        cfg.lambda_grid = get_grid(obj, "validate.", "lambda_grid", cfg.lambda_grid);
        cfg.hep_grid = get_grid(obj, "validate.", "hep_grid", cfg.hep_grid);
        cfg.markov_mu_df_scale = get_number(obj, "validate.", "markov_mu_df_scale", 1.0);
        if (!(cfg.markov_mu_df_scale > 0.0)) {
          fail("validate.markov_mu_df_scale", "must be positive");
        }
      }
      check_grid_values(cfg.lambda_grid, "validate.lambda_grid", false);
      check_grid_values(cfg.hep_grid, "validate.hep_grid", true);
      break;
    }
    case Command::Sweep: {
      cfg.lambda_grid = default_sweep_lambda_grid();
      cfg.hep_grid = {0.0, 0.001, 0.01};
      if (doc.contains("sweep")) {
        const json& obj = doc["sweep"];
        if (!obj.is_object()) fail("sweep", "must be an object");
        check_keys(obj, "sweep", {"lambda_grid", "hep_grid"});
        cfg.lambda_grid = get_grid(obj, "sweep.", "lambda_grid", cfg.lambda_grid);
        cfg.hep_grid = get_grid(obj, "sweep.", "hep_grid", cfg.hep_grid);
      }
      check_grid_values(cfg.lambda_grid, "sweep.lambda_grid", false);
      check_grid_values(cfg.hep_grid, "sweep.hep_grid", true);
      break;
    }
    case Command::Compare: {
      cfg.hep_grid = {0.0, 0.001, 0.01};
      cfg.compare_configs = {{"R1(1+1)", 1, 1}, {"R5(3+1)", 3, 1}, {"R5(7+1)", 7, 1}};
      if (doc.contains("compare")) {
        const json& obj = doc["compare"];
        if (!obj.is_object()) fail("compare", "must be an object");
        check_keys(obj, "compare", {"usable_units", "configs", "hep_grid", "aggregation"});
        cfg.usable_units =
            static_cast<int>(get_integer(obj, "compare.", "usable_units", cfg.usable_units));
        cfg.hep_grid = get_grid(obj, "compare.", "hep_grid", cfg.hep_grid);
        if (obj.contains("configs")) {
          if (!obj["configs"].is_array() || obj["configs"].empty()) {
            fail("compare.configs", "must be a non-empty array");
          }
          cfg.compare_configs.clear();
          for (const auto& c : obj["configs"]) {
            if (!c.is_object()) fail("compare.configs", "entries must be objects");
            check_keys(c, "compare.configs[]", {"name", "data_disks", "parity_disks"});
            ArrayGeometry g;
            if (!c.contains("name") || !c["name"].is_string()) {
              fail("compare.configs[].name", "required string");
            }
            g.name = c["name"].get<std::string>();
            g.data_disks = static_cast<int>(get_integer(c, "compare.configs[].", "data_disks", 0));
            g.parity_disks =
                static_cast<int>(get_integer(c, "compare.configs[].", "parity_disks", 1));
            if (g.data_disks < 1) fail("compare.configs[].data_disks", "must be >= 1");
            cfg.compare_configs.push_back(std::move(g));
          }
        }
        if (obj.contains("aggregation")) {
          const std::string agg = obj["aggregation"].get<std::string>();
          if (agg == "series") {
            cfg.aggregation = Aggregation::Series;
          } else if (agg == "weighted") {
            cfg.aggregation = Aggregation::Weighted;
          } else {
            fail("compare.aggregation", "must be \"series\" or \"weighted\"");
          }
        }
      }
      check_grid_values(cfg.hep_grid, "compare.hep_grid", true);
      for (const auto& g : cfg.compare_configs) {
        if (cfg.usable_units % g.data_disks != 0) {
          fail("compare.usable_units", "not divisible by data_disks of " + g.name);
        }
      }
      break;
    }
    case Command::ComparePolicy: {
      cfg.hep_grid = {0.0, 0.001, 0.01};
      if (doc.contains("compare_policy")) {
        const json& obj = doc["compare_policy"];
        if (!obj.is_object()) fail("compare_policy", "must be an object");
        check_keys(obj, "compare_policy", {"hep_grid"});
        cfg.hep_grid = get_grid(obj, "compare_policy.", "hep_grid", cfg.hep_grid);
      }
      check_grid_values(cfg.hep_grid, "compare_policy.hep_grid", true);
      break;
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path, Command cmd) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return from_json(doc, cmd);
}

}  // namespace storavail

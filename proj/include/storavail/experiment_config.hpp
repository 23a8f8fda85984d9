#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "storavail/capacity_planner.hpp"
#include "storavail/monte_carlo.hpp"
#include "storavail/raid_models.hpp"

namespace storavail {

/// Raised for malformed experiment configs; the CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { Solve, Simulate, Validate, Sweep, Compare, ComparePolicy };

std::string command_name(Command cmd);

/// One declarative experiment: a JSON document selects a model, parameter
/// overrides on top of a named preset, simulation settings, and the grids to
/// walk. Unknown fields are rejected so typos surface as config errors.
struct ExperimentConfig {
  Command command = Command::Solve;
  RaidParameters parameters;  // preset plus per-field overrides, validated
  SimConfig simulation;
  std::string model = "raid5-conventional";
  std::vector<double> lambda_grid;
  std::vector<double> hep_grid;

  // compare
  int usable_units = 21;
  std::vector<ArrayGeometry> compare_configs;
  Aggregation aggregation = Aggregation::Series;

  // validate-only sensitivity hook: scales mu_df in the Markov model so a
  // deliberately corrupted rate trips the validator.
  double markov_mu_df_scale = 1.0;

  std::string output_path;

  static ExperimentConfig from_json(const nlohmann::json& doc, Command cmd);
  static ExperimentConfig load_file(const std::string& path, Command cmd);
};

}  // namespace storavail

#pragma once

#include <string>

#include "storavail/experiment_config.hpp"

namespace storavail {

/// Result of one experiment command. `csv` is the machine-readable table,
/// `summary` a short human log. `ok` is false when a validation assertion
/// failed (CLI exit status 1); config problems throw ConfigError instead.
struct CommandOutput {
  std::string csv;
  std::string summary;
  bool ok = true;
};

CommandOutput cmd_solve(const ExperimentConfig& cfg);
CommandOutput cmd_simulate(const ExperimentConfig& cfg);
CommandOutput cmd_validate(const ExperimentConfig& cfg);
CommandOutput cmd_sweep(const ExperimentConfig& cfg);
CommandOutput cmd_compare(const ExperimentConfig& cfg);
CommandOutput cmd_compare_policy(const ExperimentConfig& cfg);

CommandOutput run_command(const ExperimentConfig& cfg);

/// Full-precision scientific rendering used for every numeric CSV cell.
std::string csv_number(double value);

}  // namespace storavail

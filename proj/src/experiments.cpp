#include "storavail/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "storavail/presets.hpp"

namespace storavail {
namespace {

struct Solved {
  Ctmc chain;
  SteadyState ss;
  double availability;
};

Solved solve_model(const std::string& model, const RaidParameters& p) {
  Ctmc chain = build_model(model, p);
  SteadyState ss = steady_state(chain);
  const double a = availability(chain, ss);
  return {std::move(chain), std::move(ss), a};
}

std::string state_probabilities_cell(const Ctmc& chain, const SteadyState& ss) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!out.empty()) out += ';';
    out += chain.space().states[i].name + "=" + csv_number(ss.pi[i]);
  }
  return out;
}

std::string parameter_cells(const RaidParameters& p) {
  std::ostringstream row;
  row << p.data_disks << ',' << p.parity_disks << ',' << csv_number(p.lambda) << ','
      << csv_number(p.mu_df) << ',' << csv_number(p.mu_ddf) << ',' << csv_number(p.mu_s) << ','
      << csv_number(p.mu_he) << ',' << csv_number(p.lambda_crash) << ',' << csv_number(p.hep);
  return row.str();
}

constexpr const char* kParameterHeader =
    "data_disks,parity_disks,lambda,mu_df,mu_ddf,mu_s,mu_he,lambda_crash,hep";

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t point_index) {
  return mix64(master_seed + 0x632BE59BD9B4E019ULL * (point_index + 1));
}

}  // namespace

std::string csv_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

CommandOutput cmd_solve(const ExperimentConfig& cfg) {
  const Solved s = solve_model(cfg.model, cfg.parameters);
  const double unavailability = 1.0 - s.availability;

  CommandOutput out;
  std::ostringstream csv;
  csv << "model," << kParameterHeader
      << ",availability,unavailability,downtime_min_per_year,state_probabilities\n";
  csv << cfg.model << ',' << parameter_cells(cfg.parameters) << ',' << csv_number(s.availability)
      << ',' << csv_number(unavailability) << ','
      << csv_number(downtime_minutes_per_year(s.availability)) << ','
      << state_probabilities_cell(s.chain, s.ss) << '\n';
  out.csv = csv.str();

  std::ostringstream log;
  log << cfg.model << ": availability " << csv_number(s.availability) << " ("
      << csv_number(downtime_minutes_per_year(s.availability)) << " min/yr downtime)\n";
  out.summary = log.str();
  return out;
}

CommandOutput cmd_simulate(const ExperimentConfig& cfg) {
  const SimulationResult r = run(cfg.parameters, cfg.simulation);
  const char* ttf_kind =
      cfg.simulation.ttf && cfg.simulation.ttf->kind() == FailureDistribution::Kind::Weibull
          ? "weibull"
          : "exponential";
  const char* repair_kind =
      cfg.simulation.repair_time.kind == RepairTimeModel::Kind::Fixed ? "fixed" : "exponential";

  CommandOutput out;
  std::ostringstream csv;
  csv << kParameterHeader
      << ",ttf_kind,repair_kind,mission_time_hours,iterations,confidence_level,master_seed,"
         "availability_mean,ci_half_width,downtime_double_failure_hours,"
         "downtime_human_error_hours\n";
  csv << parameter_cells(cfg.parameters) << ',' << ttf_kind << ','
      << repair_kind << ',' << csv_number(cfg.simulation.mission_time_hours) << ','
      << cfg.simulation.iterations << ',' << csv_number(cfg.simulation.confidence_level) << ','
      << cfg.simulation.master_seed << ',' << csv_number(r.availability_mean) << ','
      << csv_number(r.ci_half_width) << ',' << csv_number(r.downtime_double_failure_hours) << ','
      << csv_number(r.downtime_human_error_hours) << '\n';
  out.csv = csv.str();

  std::ostringstream log;
  log << "monte-carlo: availability " << csv_number(r.availability_mean) << " +/- "
      << csv_number(r.ci_half_width) << " over " << r.iterations_run << " iterations\n";
  out.summary = log.str();
  return out;
}

CommandOutput cmd_validate(const ExperimentConfig& cfg) {
  CommandOutput out;
  std::ostringstream csv, log;
  csv << "lambda,hep,markov_availability,mc_availability,ci_half_width,abs_diff,pass\n";

  std::size_t point = 0;
  std::size_t failures = 0;
  for (double lambda : cfg.lambda_grid) {
    for (double hep : cfg.hep_grid) {
      RaidParameters p = cfg.parameters;
      p.lambda = lambda;
      p.hep = hep;

      RaidParameters markov_p = p;
      markov_p.mu_df *= cfg.markov_mu_df_scale;
      const Solved s = solve_model("raid5-conventional", markov_p);

      // The Markov chain assumes exponential laws, so the reference run is
      // pinned to exponential TTF and repair regardless of simulate settings.
      SimConfig sim = cfg.simulation;
      sim.ttf = FailureDistribution::exponential(lambda);
      sim.repair_time = RepairTimeModel::exponential();
      sim.master_seed = point_seed(cfg.simulation.master_seed, point);
      const SimulationResult r = run(p, sim);

      const double diff = std::fabs(r.availability_mean - s.availability);
      const bool pass = diff <= r.ci_half_width;
      failures += pass ? 0 : 1;
      csv << csv_number(lambda) << ',' << csv_number(hep) << ',' << csv_number(s.availability)
          << ',' << csv_number(r.availability_mean) << ',' << csv_number(r.ci_half_width) << ','
          << csv_number(diff) << ',' << (pass ? "true" : "false") << '\n';
      log << (pass ? "PASS" : "FAIL") << " lambda=" << csv_number(lambda)
          << " hep=" << csv_number(hep) << " |mc-markov|=" << csv_number(diff)
          << " ci=" << csv_number(r.ci_half_width) << '\n';
      ++point;
    }
  }
  log << (failures == 0 ? "all points within the confidence interval\n"
                        : std::to_string(failures) + " point(s) outside the confidence interval\n");
  out.csv = csv.str();
  out.summary = log.str();
  out.ok = failures == 0;
  return out;
}

CommandOutput cmd_sweep(const ExperimentConfig& cfg) {
  CommandOutput out;
  std::ostringstream csv, log;
  csv << "model,lambda,hep,availability,unavailability,downtime_min_per_year\n";
  for (double hep : cfg.hep_grid) {
    for (double lambda : cfg.lambda_grid) {
      RaidParameters p = cfg.parameters;
      p.lambda = lambda;
      p.hep = hep;
      const Solved s = solve_model(cfg.model, p);
      csv << cfg.model << ',' << csv_number(lambda) << ',' << csv_number(hep) << ','
          << csv_number(s.availability) << ',' << csv_number(1.0 - s.availability) << ','
          << csv_number(downtime_minutes_per_year(s.availability)) << '\n';
    }
  }
  log << "swept " << cfg.lambda_grid.size() << " lambda points x " << cfg.hep_grid.size()
      << " hep values on " << cfg.model << '\n';
  out.csv = csv.str();
  out.summary = log.str();
  return out;
}

CommandOutput cmd_compare(const ExperimentConfig& cfg) {
  const ComparisonPlan plan = plan_equivalent(cfg.compare_configs, cfg.usable_units);

  CommandOutput out;
  std::ostringstream csv, log;
  csv << "config,data_disks,total_disks_per_array,array_count,erf,hep,per_array_availability,"
         "subsystem_availability,subsystem_unavailability,rank\n";
  for (double hep : cfg.hep_grid) {
    struct Row {
      const PlanEntry* entry;
      double per_array;
      double subsystem;
      int rank = 0;
    };
    std::vector<Row> rows;
    for (const auto& entry : plan.entries) {
      RaidParameters p = cfg.parameters;
      p.data_disks = entry.data_disks;
      p.parity_disks = entry.total_disks_per_array - entry.data_disks;
      p.hep = hep;
      const std::string model =
          (entry.data_disks == 1 && p.parity_disks == 1) ? "raid1" : "raid5-conventional";
      const Solved s = solve_model(model, p);
      rows.push_back(
          {&entry, s.availability,
           subsystem_availability(s.availability, entry.array_count, cfg.aggregation)});
    }
    // Rank 1 = highest subsystem availability at this hep.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rows[a].subsystem > rows[b].subsystem; });
    log << "hep=" << csv_number(hep) << " ranking:";
    for (std::size_t r = 0; r < order.size(); ++r) {
      rows[order[r]].rank = static_cast<int>(r + 1);
      log << (r == 0 ? " " : " > ") << rows[order[r]].entry->name;
    }
    log << '\n';
    for (const auto& row : rows) {
      csv << row.entry->name << ',' << row.entry->data_disks << ','
          << row.entry->total_disks_per_array << ',' << row.entry->array_count << ','
          << format_erf(row.entry->erf) << ',' << csv_number(hep) << ','
          << csv_number(row.per_array) << ',' << csv_number(row.subsystem) << ','
          << csv_number(1.0 - row.subsystem) << ',' << row.rank << '\n';
    }
  }
  out.csv = csv.str();
  out.summary = log.str();
  return out;
}

CommandOutput cmd_compare_policy(const ExperimentConfig& cfg) {
  CommandOutput out;
  std::ostringstream csv, log;
  csv << "lambda,hep,availability_conventional,availability_autofailover,"
         "unavailability_conventional,unavailability_autofailover,improvement_factor\n";
  for (double hep : cfg.hep_grid) {
    RaidParameters p = cfg.parameters;
    p.hep = hep;
    const Solved conventional = solve_model("raid5-conventional", p);
    const Solved autofailover = solve_model("raid5-autofailover", p);
    const double u_conv = 1.0 - conventional.availability;
    const double u_auto = 1.0 - autofailover.availability;
    const double factor = u_conv / u_auto;
    csv << csv_number(p.lambda) << ',' << csv_number(hep) << ','
        << csv_number(conventional.availability) << ',' << csv_number(autofailover.availability)
        << ',' << csv_number(u_conv) << ',' << csv_number(u_auto) << ',' << csv_number(factor)
        << '\n';
    log << "hep=" << csv_number(hep) << " unavailability improvement factor " << csv_number(factor)
        << '\n';
  }
  out.csv = csv.str();
  out.summary = log.str();
  return out;
}

CommandOutput run_command(const ExperimentConfig& cfg) {
  switch (cfg.command) {
    case Command::Solve: return cmd_solve(cfg);
    case Command::Simulate: return cmd_simulate(cfg);
    case Command::Validate: return cmd_validate(cfg);
    case Command::Sweep: return cmd_sweep(cfg);
    case Command::Compare: return cmd_compare(cfg);
    case Command::ComparePolicy: return cmd_compare_policy(cfg);
  }
  throw std::logic_error("unreachable command");
}

}  // namespace storavail

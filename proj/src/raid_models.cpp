#include "storavail/raid_models.hpp"

#include <cmath>
#include <stdexcept>

namespace storavail {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_rate(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(field) + " must be a positive finite rate");
  }
}

}  // namespace

void RaidParameters::validate() const {
  require(data_disks >= 1, "data_disks must be >= 1");
  // parity 0 is the degenerate no-redundancy geometry; only the simulator
  // accepts it, the Markov builders insist on single parity.
  require(parity_disks == 0 || parity_disks == 1, "parity_disks must be 0 or 1");
  // lambda = 0 (a disk that never fails) is allowed for limit checks
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be a non-negative finite rate");
  }
  check_rate(mu_df, "mu_df");
  check_rate(mu_ddf, "mu_ddf");
  check_rate(mu_s, "mu_s");
  check_rate(mu_he, "mu_he");
  check_rate(lambda_crash, "lambda_crash");
  require(hep >= 0.0 && hep < 1.0, "hep must lie in [0, 1)");
}

Ctmc build_raid5_conventional(const RaidParameters& p) {
  p.validate();
  if (p.parity_disks != 1) throw std::invalid_argument("parity_disks must be 1");
  const double n = p.total_disks();
  const double lam = p.lambda;

  StateSpace space{{
      {"OP", true},   // all disks operational
      {"EXP", true},  // one failed disk, array degraded but serving
      {"DU", false},  // wrong disk pulled; data intact but unreachable
      {"DL", false},  // data lost, restore from backup running
  }};
  // A human action attempted at rate mu completes successfully at
  // mu*(1-hep) and goes wrong at mu*hep; the error share from DU is a
  // self-loop and therefore omitted.
  std::vector<Transition> t{
      {"OP", "EXP", n * lam, "first disk failure"},
      {"EXP", "DL", (n - 1.0) * lam, "second disk failure before repair"},
      {"EXP", "OP", p.mu_df * (1.0 - p.hep), "failed disk replaced"},
      {"EXP", "DU", p.mu_df * p.hep, "wrong disk replaced"},
      {"DU", "OP", p.mu_he * (1.0 - p.hep), "wrong replacement undone"},
      {"DU", "DL", p.lambda_crash, "wrongly removed disk crashed"},
      {"DL", "OP", p.mu_ddf, "restore from backup"},
  };
  return Ctmc::build(std::move(space), std::move(t));
}

Ctmc build_raid1(const RaidParameters& p) {
  if (p.data_disks != 1 || p.parity_disks != 1) {
    throw std::invalid_argument("raid1 requires a 1+1 geometry");
  }
  return build_raid5_conventional(p);
}

Ctmc build_raid5_autofailover(const RaidParameters& p) {
  p.validate();
  if (p.parity_disks != 1) throw std::invalid_argument("parity_disks must be 1");
  const double n = p.total_disks();
  const double lam = p.lambda;
  const double ok = 1.0 - p.hep;

  // "ns" marks states with no spare installed. EXP2/DU2 (spare present,
  // wrongly removed disk) have no inbound path from OP under this transition
  // table; they are kept for the full state partition and declared transient.
  StateSpace space{{
      {"OP", true},
      {"EXP1", true},
      {"OPns", true},
      {"EXPns1", true},
      {"EXPns2", true},
      {"EXP2", true},
      {"DL", false},
      {"DLns", false},
      {"DU1", false},
      {"DU2", false},
      {"DUns1", false},
      {"DUns2", false},
  }};
  std::vector<Transition> t{
      {"OP", "EXP1", n * lam, "disk failure"},

      // Replacement is forbidden while the spare rebuild runs, so EXP1 has
      // no human-error branch.
      {"EXP1", "DL", (n - 1.0) * lam, "second disk failure"},
      {"EXP1", "OPns", p.mu_s, "rebuilt into hot spare"},

      {"OPns", "EXPns1", n * lam, "disk failure"},
      {"OPns", "OP", p.mu_df * ok, "spare restocked"},
      {"OPns", "EXPns2", p.mu_df * p.hep, "wrong disk pulled while restocking"},

      {"EXPns1", "EXP1", p.mu_df * ok, "failed disk replaced"},
      {"EXPns1", "OPns", p.mu_s * ok, "fail-over completed"},
      {"EXPns1", "DUns1", (p.mu_df + p.mu_s) * p.hep, "human error in fail-over or replacement"},
      {"EXPns1", "DLns", (n - 1.0) * lam, "second disk failure"},

      {"EXPns2", "OP", p.mu_he * ok, "wrongly removed disk placed back"},
      {"EXPns2", "DUns2", p.mu_he * p.hep, "second human error during recovery"},
      {"EXPns2", "EXPns1", p.lambda_crash, "wrongly removed disk crashed"},
      {"EXPns2", "DUns1", (n - 1.0) * lam, "disk failure"},

      {"DL", "OP", p.mu_ddf, "restore from backup"},

      {"DLns", "OPns", p.mu_ddf, "restore from backup"},
      {"DLns", "DL", p.mu_df * ok, "failed disk replaced by new spare"},

      {"DUns1", "EXPns1", p.mu_he * ok, "human error recovered"},
      {"DUns1", "DLns", p.lambda_crash, "wrongly removed disk crashed"},
      {"DUns1", "OPns", p.mu_ddf, "restore from backup"},
      {"DUns1", "DU1", p.mu_df * ok, "failed disk replaced by new spare"},

      {"DUns2", "EXPns2", p.mu_he * ok, "one human error recovered"},
      {"DUns2", "DUns1", 2.0 * p.lambda_crash, "one of two removed disks crashed"},

      {"EXP2", "OP", p.mu_he * ok, "wrongly removed disk placed back"},
      {"EXP2", "DU2", p.mu_he * p.hep, "second human error during recovery"},
      {"EXP2", "EXP1", p.lambda_crash, "wrongly removed disk crashed"},
      {"EXP2", "DU1", (n - 1.0) * lam, "disk failure"},

      {"DU1", "EXP1", p.mu_he * ok, "human error recovered"},
      {"DU1", "DL", p.lambda_crash, "wrongly removed disk crashed"},
      {"DU1", "OP", p.mu_ddf, "restore from backup"},

      {"DU2", "EXP2", p.mu_he * ok, "one human error recovered"},
      {"DU2", "DU1", 2.0 * p.lambda_crash, "one of two removed disks crashed"},
  };
  BuildOptions options;
  options.allowed_transient_states = {"EXP2", "DU2"};
  return Ctmc::build(std::move(space), std::move(t), std::move(options));
}

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> names{"raid5-conventional", "raid1",
                                              "raid5-autofailover"};
  return names;
}

bool is_known_model(std::string_view model_name) {
  for (const auto& n : known_models()) {
    if (n == model_name) return true;
  }
  return false;
}

Ctmc build_model(std::string_view model_name, const RaidParameters& p) {
  if (model_name == "raid5-conventional") return build_raid5_conventional(p);
  if (model_name == "raid1") return build_raid1(p);
  if (model_name == "raid5-autofailover") return build_raid5_autofailover(p);
  throw std::invalid_argument("unknown model: " + std::string(model_name));
}

StatePartition classify_states(const Ctmc& chain) {
  StatePartition partition;
  for (const auto& s : chain.space().states) {
    (s.available ? partition.available : partition.unavailable).push_back(s.name);
  }
  return partition;
}

}  // namespace storavail

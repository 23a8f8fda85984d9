#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "storavail/ctmc.hpp"

namespace storavail {

/// Full rate set for a disk array. Rates are per hour; hep is the
/// probability that a single human action (disk replacement or error
/// recovery) is performed incorrectly.
struct RaidParameters {
  int data_disks = 3;
  int parity_disks = 1;        // 0 allowed only for the degenerate simulated array
  double lambda = 1e-5;        // per-disk failure rate; 0 = never fails
  double mu_df = 0.1;          // disk replacement completion rate
  double mu_ddf = 0.03;        // recovery-from-backup completion rate
  double mu_s = 1.0;           // spare rebuild completion rate
  double mu_he = 1.0;          // human-error recovery completion rate
  double lambda_crash = 0.01;  // crash rate of a wrongly removed disk
  double hep = 0.001;          // human error probability, in [0, 1)

  int total_disks() const { return data_disks + parity_disks; }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Four-state chain {OP, EXP | DU, DL} for an array under the conventional
/// replacement policy: a failed disk may be pulled by the operator at any
/// time, so every replacement carries a wrong-disk risk.
Ctmc build_raid5_conventional(const RaidParameters& p);

/// Mirrored pair (1+1) using the same four-state workflow with N = 2.
Ctmc build_raid1(const RaidParameters& p);

/// Twelve-state chain for the automatic fail-over policy: rebuild onto a hot
/// spare must finish before any human replacement is allowed, so the exposed
/// window right after a failure carries no human-error risk.
Ctmc build_raid5_autofailover(const RaidParameters& p);

/// Builder lookup by the externally addressable model names
/// "raid5-conventional", "raid1", "raid5-autofailover".
Ctmc build_model(std::string_view model_name, const RaidParameters& p);
bool is_known_model(std::string_view model_name);
const std::vector<std::string>& known_models();

struct StatePartition {
  std::vector<std::string> available;
  std::vector<std::string> unavailable;
};

/// Availability labels as fixed at build time.
StatePartition classify_states(const Ctmc& chain);

}  // namespace storavail

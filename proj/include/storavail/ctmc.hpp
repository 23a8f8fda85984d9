#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace storavail {

struct StateInfo {
  std::string name;
  bool available = true;
};

struct StateSpace {
  std::vector<StateInfo> states;

  std::size_t size() const { return states.size(); }
  /// Index of a named state, or npos when absent.
  std::size_t index_of(const std::string& name) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct Transition {
  std::string from;
  std::string to;
  double rate = 0.0;  // per hour
  std::string label;
};

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  /// States allowed to carry no inbound path from the main recurrent class.
  /// Everything else must be strongly connected; a deviation is a build error,
  /// which guards against transition-table typos.
  std::vector<std::string> allowed_transient_states;
};

/// Continuous-time Markov chain with a dense generator matrix (row = source
/// state, rows sum to zero). Immutable once built; safe to share.
class Ctmc {
 public:
  static Ctmc build(StateSpace space, std::vector<Transition> transitions,
                    BuildOptions options = {});

  std::size_t size() const { return space_.size(); }
  const StateSpace& space() const { return space_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<std::string>& transient_states() const { return transient_states_; }

  /// Generator entry q(from, to).
  double rate(std::size_t from, std::size_t to) const { return q_[from * size() + to]; }
  std::span<const double> generator() const { return q_; }

  nlohmann::json to_json() const;
  static Ctmc from_json(const nlohmann::json& doc);

 private:
  Ctmc() = default;
  StateSpace space_;
  std::vector<double> q_;  // row-major size() x size()
  std::vector<Transition> transitions_;
  std::vector<std::string> transient_states_;
};

struct SteadyState {
  std::vector<double> pi;
  double residual = 0.0;  // max-norm of pi * Q
};

/// Stationary distribution: solves pi * Q = 0 with sum(pi) = 1 by replacing
/// one balance equation with the normalization constraint.
SteadyState steady_state(const Ctmc& chain);

/// Sum of stationary probability over states flagged available.
double availability(const Ctmc& chain, const SteadyState& ss);

/// (1 - availability) expressed as minutes of downtime per year.
double downtime_minutes_per_year(double availability);

}  // namespace storavail

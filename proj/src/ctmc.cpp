#include "storavail/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace storavail {
namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

/// States reachable from `start` along declared edges. `reversed` walks
/// edges backwards instead.
std::vector<bool> reach(const std::vector<bool>& adjacent, std::size_t n, std::size_t start,
                        bool reversed) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || seen[j]) continue;
      if (reversed ? adjacent[j * n + i] : adjacent[i * n + j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

std::size_t StateSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return i;
  }
  return npos;
}

Ctmc Ctmc::build(StateSpace space, std::vector<Transition> transitions, BuildOptions options) {
  const std::size_t n = space.size();
  if (n == 0) throw ModelError("state space is empty");
  {
    std::set<std::string> names;
    for (const auto& s : space.states) {
      if (!names.insert(s.name).second) {
        throw ModelError("duplicate state name: " + s.name);
      }
    }
  }

  // Connectivity is judged on the declared edge structure, zero-rate edges
  // included, so a parameter choice that zeroes a rate (hep = 0) does not
  // change which chains are accepted.
  std::vector<double> q(n * n, 0.0);
  std::vector<bool> adjacent(n * n, false);
  std::vector<Transition> kept;
  kept.reserve(transitions.size());
  for (const auto& t : transitions) {
    const std::size_t from = space.index_of(t.from);
    const std::size_t to = space.index_of(t.to);
    if (from == StateSpace::npos) throw ModelError("unknown state name: " + t.from);
    if (to == StateSpace::npos) throw ModelError("unknown state name: " + t.to);
    if (!std::isfinite(t.rate) || t.rate < 0.0) {
      throw ModelError("negative or non-finite rate on " + t.from + " -> " + t.to);
    }
    if (from == to) continue;  // self-loops are unobservable; dropped
    q[from * n + to] += t.rate;  // parallel edges sum
    adjacent[from * n + to] = true;
    kept.push_back(t);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double out = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) out += q[i * n + j];
    }
    q[i * n + i] = -out;
  }

  std::vector<bool> transient(n, false);
  for (const auto& name : options.allowed_transient_states) {
    const std::size_t i = space.index_of(name);
    if (i == StateSpace::npos) throw ModelError("unknown state name: " + name);
    transient[i] = true;
  }

  // Connectivity: the non-transient core must be strongly connected, every
  // declared-transient state must feed into it without being reachable back.
  std::size_t core = StateSpace::npos;
  for (std::size_t i = 0; i < n; ++i) {
    if (!transient[i]) {
      core = i;
      break;
    }
  }
  if (core == StateSpace::npos) throw ModelError("all states declared transient");

  const auto forward = reach(adjacent, n, core, /*reversed=*/false);
  const auto backward = reach(adjacent, n, core, /*reversed=*/true);
  std::vector<std::string> unreachable, no_return, reachable_transient;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = space.states[i].name;
    if (!transient[i] && !forward[i]) unreachable.push_back(name);
    if (transient[i] && forward[i]) reachable_transient.push_back(name);
    if (!backward[i]) no_return.push_back(name);
  }
  if (!unreachable.empty()) {
    throw ModelError("chain is not irreducible; unreachable states: " + join(unreachable));
  }
  if (!no_return.empty()) {
    throw ModelError("chain is not irreducible; states with no path back: " + join(no_return));
  }
  if (!reachable_transient.empty()) {
    throw ModelError("states declared transient but reachable: " + join(reachable_transient));
  }

  Ctmc c;
  c.space_ = std::move(space);
  c.q_ = std::move(q);
  c.transitions_ = std::move(kept);
  for (std::size_t i = 0; i < n; ++i) {
    if (transient[i]) c.transient_states_.push_back(c.space_.states[i].name);
  }
  return c;
}

nlohmann::json Ctmc::to_json() const {
  nlohmann::json doc;
  doc["states"] = nlohmann::json::array();
  for (const auto& s : space_.states) {
    doc["states"].push_back({{"name", s.name}, {"available", s.available}});
  }
  doc["transitions"] = nlohmann::json::array();
  for (const auto& t : transitions_) {
    doc["transitions"].push_back(
        {{"from", t.from}, {"to", t.to}, {"rate", t.rate}, {"label", t.label}});
  }
  if (!transient_states_.empty()) doc["transient_states"] = transient_states_;
  return doc;
}

Ctmc Ctmc::from_json(const nlohmann::json& doc) {
  StateSpace space;
  for (const auto& s : doc.at("states")) {
    space.states.push_back({s.at("name").get<std::string>(), s.at("available").get<bool>()});
  }
  std::vector<Transition> transitions;
  for (const auto& t : doc.at("transitions")) {
    transitions.push_back({t.at("from").get<std::string>(), t.at("to").get<std::string>(),
                           t.at("rate").get<double>(), t.value("label", std::string{})});
  }
  BuildOptions options;
  if (doc.contains("transient_states")) {
    options.allowed_transient_states = doc["transient_states"].get<std::vector<std::string>>();
  }
  return build(std::move(space), std::move(transitions), std::move(options));
}

SteadyState steady_state(const Ctmc& chain) {
  const std::size_t n = chain.size();
  const auto q = chain.generator();

  // Columns of Q are the balance equations sum_i pi_i q(i,j) = 0; the last
  // one is replaced by normalization. Solve A x = b with A = Q^T (row k <- 1).
  const std::size_t k = n - 1;
  std::vector<double> a(n * n);
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = q[j * n + i];
  }
  for (std::size_t j = 0; j < n; ++j) a[k * n + j] = 1.0;
  b[k] = 1.0;

  // LU factorization with partial pivoting, kept for the refinement pass.
  std::vector<double> lu = a;
  std::vector<std::size_t> piv(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(lu[r * n + col]) > std::fabs(lu[best * n + col])) best = r;
    }
    if (std::fabs(lu[best * n + col]) < 1e-300) {
      throw SolverError("singular balance system; the chain has no unique steady state");
    }
    piv[col] = best;
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[col * n + j], lu[best * n + j]);
    }
    const double inv = 1.0 / lu[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu[r * n + col] * inv;
      lu[r * n + col] = f;
      for (std::size_t j = col + 1; j < n; ++j) lu[r * n + j] -= f * lu[col * n + j];
    }
  }
  auto lu_solve = [&](std::vector<double> rhs) {
    // Rows were exchanged wholesale during factorization, so the permutation
    // must be applied to the right-hand side before the triangular solves.
    for (std::size_t col = 0; col < n; ++col) {
      if (piv[col] != col) std::swap(rhs[col], rhs[piv[col]]);
    }
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t r = col + 1; r < n; ++r) rhs[r] -= lu[r * n + col] * rhs[col];
    }
    for (std::size_t col = n; col-- > 0;) {
      for (std::size_t j = col + 1; j < n; ++j) rhs[col] -= lu[col * n + j] * rhs[j];
      rhs[col] /= lu[col * n + col];
    }
    return rhs;
  };

  std::vector<double> x = lu_solve(b);
  // One step of iterative refinement tightens the balance residual.
  {
    std::vector<double> r(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = b[i];
      for (std::size_t j = 0; j < n; ++j) acc -= a[i * n + j] * x[j];
      r[i] = acc;
    }
    const std::vector<double> dx = lu_solve(std::move(r));
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) {
      if (x[i] < -1e-9) {
        throw SolverError("steady-state solve produced a negative probability: " +
                          chain.space().states[i].name + " = " + std::to_string(x[i]));
      }
      x[i] = 0.0;  // rounding noise on transient states
    }
    sum += x[i];
  }
  for (auto& v : x) v /= sum;

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * q[i * n + j];
    residual = std::max(residual, std::fabs(acc));
  }
  if (residual > 1e-9) {
    std::ostringstream oss;
    oss << "steady-state residual " << residual << " exceeds tolerance; likely a modeling bug";
    throw SolverError(oss.str());
  }
  return SteadyState{std::move(x), residual};
}

double availability(const Ctmc& chain, const SteadyState& ss) {
  double a = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain.space().states[i].available) a += ss.pi[i];
  }
  return std::min(a, 1.0);
}

double downtime_minutes_per_year(double availability) {
  if (!(availability >= 0.0 && availability <= 1.0)) {
    throw std::invalid_argument("availability must lie in [0, 1], got " +
                                std::to_string(availability));
  }
  constexpr double kMinutesPerYear = 525600.0;
  return (1.0 - availability) * kMinutesPerYear;
}

}  // namespace storavail

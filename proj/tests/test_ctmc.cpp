#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "storavail/ctmc.hpp"
#include "support/oracles.hpp"

using namespace storavail;

namespace {

Ctmc two_state(double lambda, double mu) {
  return Ctmc::build({{{"up", true}, {"down", false}}},
                     {{"up", "down", lambda, "fail"}, {"down", "up", mu, "repair"}});
}

/// Random irreducible chain on a complete graph with log-uniform rates.
Ctmc random_chain(std::mt19937_64& rng, std::size_t n) {
  StateSpace space;
  for (std::size_t i = 0; i < n; ++i) {
    space.states.push_back({"s" + std::to_string(i), i % 2 == 0});
  }
  std::uniform_real_distribution<double> exponent(-5.0, 1.0);
  std::vector<Transition> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        edges.push_back({space.states[i].name, space.states[j].name,
                         std::pow(10.0, exponent(rng)), ""});
      }
    }
  }
  return Ctmc::build(std::move(space), std::move(edges));
}

double residual_inf_norm(const Ctmc& c, const std::vector<double>& pi) {
  double r = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += pi[i] * c.rate(i, j);
    r = std::max(r, std::fabs(acc));
  }
  return r;
}

}  // namespace

TEST_CASE("two-state generator matches the definition") {
  const Ctmc c = two_state(0.25, 4.0);
  CHECK(c.rate(0, 1) == 0.25);
  CHECK(c.rate(0, 0) == -0.25);
  CHECK(c.rate(1, 0) == 4.0);
  CHECK(c.rate(1, 1) == -4.0);
}

TEST_CASE("parallel edges sum into one entry") {
  const Ctmc c = Ctmc::build({{{"up", true}, {"down", false}}},
                             {{"up", "down", 0.2, "a"},
                              {"up", "down", 0.05, "b"},
                              {"down", "up", 1.0, "repair"}});
  CHECK(c.rate(0, 1) == 0.25);
}

TEST_CASE("self-loops are dropped") {
  const Ctmc c = Ctmc::build({{{"up", true}, {"down", false}}},
                             {{"up", "up", 99.0, "noop"},
                              {"up", "down", 0.5, "fail"},
                              {"down", "up", 1.0, "repair"}});
  CHECK(c.rate(0, 0) == -0.5);
  CHECK(c.rate(0, 1) == 0.5);
}

TEST_CASE("build rejects malformed inputs") {
  const StateSpace space{{{"a", true}, {"b", false}}};
  CHECK_THROWS_WITH_AS(Ctmc::build(space, {{"a", "zz", 1.0, ""}, {"b", "a", 1.0, ""}}),
                       doctest::Contains("zz"), ModelError);
  CHECK_THROWS_AS(Ctmc::build(space, {{"a", "b", -0.5, ""}, {"b", "a", 1.0, ""}}), ModelError);
  CHECK_THROWS_AS(Ctmc::build(space, {{"a", "b", std::nan(""), ""}, {"b", "a", 1.0, ""}}),
                  ModelError);
  CHECK_THROWS_AS(Ctmc::build({{{"a", true}, {"a", false}}}, {}), ModelError);
  CHECK_THROWS_AS(Ctmc::build({}, {}), ModelError);
}

TEST_CASE("non-irreducible chains are reported with the offending states") {
  const StateSpace space{{{"a", true}, {"b", true}, {"c", false}}};
  // c is never entered
  CHECK_THROWS_WITH_AS(
      Ctmc::build(space, {{"a", "b", 1.0, ""}, {"b", "a", 1.0, ""}, {"c", "a", 1.0, ""}}),
      doctest::Contains("unreachable states: c"), ModelError);
  // c is absorbing
  CHECK_THROWS_WITH_AS(
      Ctmc::build(space, {{"a", "b", 1.0, ""}, {"b", "a", 1.0, ""}, {"b", "c", 1.0, ""}}),
      doctest::Contains("no path back: c"), ModelError);
}

TEST_CASE("declared transient states are tolerated and checked") {
  const StateSpace space{{{"a", true}, {"b", true}, {"t", false}}};
  const std::vector<Transition> edges{
      {"a", "b", 1.0, ""}, {"b", "a", 2.0, ""}, {"t", "a", 0.5, ""}};
  BuildOptions options;
  options.allowed_transient_states = {"t"};
  const Ctmc c = Ctmc::build(space, edges, options);
  CHECK(c.transient_states() == std::vector<std::string>{"t"});

  // same edges without the declaration fail
  CHECK_THROWS_AS(Ctmc::build(space, edges), ModelError);

  // a declared-transient state that is actually reachable is a table bug
  std::vector<Transition> with_inbound = edges;
  with_inbound.push_back({"a", "t", 0.1, ""});
  CHECK_THROWS_WITH_AS(Ctmc::build(space, with_inbound, options),
                       doctest::Contains("declared transient but reachable"), ModelError);
}

TEST_CASE("zero-rate edges keep the declared structure alive") {
  // With the error branch switched off (rate 0), the chain still builds and
  // the dead-end state simply carries no probability.
  const Ctmc c = Ctmc::build({{{"up", true}, {"down", false}, {"err", false}}},
                             {{"up", "down", 1e-3, ""},
                              {"down", "up", 1.0, ""},
                              {"down", "err", 0.0, ""},
                              {"err", "up", 1.0, ""}});
  const SteadyState ss = steady_state(c);
  CHECK(ss.pi[2] <= 1e-15);
}

TEST_CASE("two-state steady state equals the birth-death balance") {
  const double lambda = 3e-4, mu = 0.37;
  const Ctmc c = two_state(lambda, mu);
  const SteadyState ss = steady_state(c);
  CHECK(std::fabs(ss.pi[0] - mu / (lambda + mu)) < 1e-12);
  CHECK(std::fabs(ss.pi[1] - lambda / (lambda + mu)) < 1e-12);
  CHECK(availability(c, ss) == doctest::Approx(mu / (lambda + mu)).epsilon(1e-12));
}

TEST_CASE("symmetric cycle is uniform") {
  const Ctmc c = Ctmc::build(
      {{{"a", true}, {"b", true}, {"c", true}}},
      {{"a", "b", 2.0, ""}, {"b", "c", 2.0, ""}, {"c", "a", 2.0, ""}});
  const SteadyState ss = steady_state(c);
  for (double pi : ss.pi) CHECK(pi == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(availability(c, ss) == 1.0);
}

TEST_CASE("steady state satisfies the probability invariants on random chains") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const Ctmc c = random_chain(rng, 2 + trial % 7);
    const SteadyState ss = steady_state(c);
    double sum = 0.0;
    for (double pi : ss.pi) {
      CHECK(pi >= 0.0);
      sum += pi;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-10);
    CHECK(ss.residual <= 1e-10);
    CHECK(residual_inf_norm(c, ss.pi) <= 1e-10);
  }
}

TEST_CASE("steady state agrees with the independent oracles") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    const Ctmc c = random_chain(rng, 3 + trial % 6);
    const SteadyState ss = steady_state(c);
    const auto gj = oracles::gauss_jordan_stationary(c);
    const auto power = oracles::uniformized_stationary(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::fabs(ss.pi[i] - gj[i]) < 1e-11);
      CHECK(std::fabs(ss.pi[i] - power[i]) < 1e-8);
    }
  }
}

TEST_CASE("scaling every rate leaves the steady state unchanged") {
  std::mt19937_64 rng(99);
  const StateSpace space{{{"a", true}, {"b", true}, {"c", false}, {"d", false}}};
  std::uniform_real_distribution<double> exponent(-6.0, 0.5);
  std::vector<Transition> edges;
  for (const auto& from : space.states) {
    for (const auto& to : space.states) {
      if (from.name != to.name) {
        edges.push_back({from.name, to.name, std::pow(10.0, exponent(rng)), ""});
      }
    }
  }
  const SteadyState base = steady_state(Ctmc::build(space, edges));
  for (double factor : {1e-3, 12.0, 1e4}) {
    auto scaled = edges;
    for (auto& e : scaled) e.rate *= factor;
    const SteadyState ss = steady_state(Ctmc::build(space, scaled));
    for (std::size_t i = 0; i < base.pi.size(); ++i) {
      CHECK(std::fabs(ss.pi[i] - base.pi[i]) <= 1e-10);
    }
  }
}

TEST_CASE("availability sums the flagged states") {
  const Ctmc all_up = Ctmc::build({{{"a", true}, {"b", true}}},
                                  {{"a", "b", 1.0, ""}, {"b", "a", 2.0, ""}});
  CHECK(availability(all_up, steady_state(all_up)) == 1.0);
}

TEST_CASE("downtime conversion") {
  CHECK(downtime_minutes_per_year(1.0) == 0.0);
  CHECK(downtime_minutes_per_year(0.5) == doctest::Approx(262800.0));
  CHECK(downtime_minutes_per_year(1.0 - 4.5e-7) == doctest::Approx(0.23652).epsilon(1e-9));
  CHECK_THROWS_AS(downtime_minutes_per_year(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(downtime_minutes_per_year(1.5), std::invalid_argument);
  CHECK_THROWS_AS(downtime_minutes_per_year(std::nan("")), std::invalid_argument);
}

TEST_CASE("json round trip preserves the chain") {
  const Ctmc c = two_state(1e-4, 0.2);
  const Ctmc back = Ctmc::from_json(c.to_json());
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.space().states[i].name == c.space().states[i].name);
    CHECK(back.space().states[i].available == c.space().states[i].available);
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(back.rate(i, j) == c.rate(i, j));
  }
}

#include <doctest.h>

#include <string>

#include "terrasim/scenario.hpp"

using namespace terrasim;

namespace {

std::string error_of(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty document yields the default scenario") {
  const Scenario s = load_scenario("{}");
  const Scenario d = default_scenario();
  CHECK(scenario_to_json(s) == scenario_to_json(d));
  CHECK(s.grid.nx == 64);
  CHECK(s.grid.radius == 1.0);
  CHECK(s.run.days == 50);
  CHECK(s.run.substeps_per_day == 200);
  CHECK(s.params.alpha == 5.0);
  CHECK(s.params.beta0 == 0.01);
  CHECK(s.params.nu == 0.1);
  CHECK(s.params.kappa == 0.05);
  CHECK(s.params.flux_w == 0.01);
  CHECK(s.schedule.lambda_m == 25.0);
  CHECK(s.initial.population.size() == 3);
  CHECK(s.initial.jobs.size() == 2);
  CHECK(s.initial.efficiency_constant == 0.6);
  CHECK(s.initial.wealth == 1.0);
  CHECK(s.output.snapshot_every == 1);
  CHECK_FALSE(s.output.heatmaps);
}

TEST_CASE("defaults round-trip through JSON") {
  const Scenario d = default_scenario();
  const Scenario back = load_scenario(scenario_to_json(d).dump());
  CHECK(scenario_to_json(back) == scenario_to_json(d));
}

TEST_CASE("validation errors name the violated invariant") {
  CHECK(error_of(R"({"params":{"beta1":0.5,"beta2":0.5,"beta3":0.5}})") ==
        "beta1+beta2+beta3 must equal 1");
  CHECK(error_of(R"({"grid":{"nx":3}})") == "nx must be >= 4");
  CHECK(error_of(R"({"params":{"alpha":0.9}})") == "alpha must be > 1");
  CHECK(error_of(R"({"run":{"substeps_per_day":201}})") == "substeps_per_day must be even and >= 2");
  CHECK(error_of(R"({"run":{"days":0}})") == "days must be >= 1");
  CHECK(error_of(R"({"initial":{"i0":1.5}})") == "i0 must lie in [0, 1]");
  CHECK(error_of(R"({"initial":{"i0":[{"center":[0,0],"amplitude":2,"width":0.5}]}})") ==
        "i0 must lie in [0, 1] on every cell");
  CHECK(error_of(R"({"initial":{"P0":[],"E0":[]}})") == "P0 and E0 are both zero on the grid");
  CHECK(error_of(R"({"schedule":{"morning":[0,0.6]}})") ==
        "morning and evening windows must be disjoint");
}

TEST_CASE("strict keys and types") {
  CHECK(error_of(R"({"gird":{}})") == "unknown key \"gird\" in scenario");
  CHECK(error_of(R"({"params":{"gamma":1}})") == "unknown key \"gamma\" in params");
  CHECK(error_of(R"({"initial":{"E0":[{"center":[0,0],"amplitude":1,"width":0.1,"x":1}]}})") ==
        "unknown key \"x\" in initial.E0[0]");
  CHECK(error_of(R"({"grid":{"nx":"64"}})") == "grid.nx must be an integer");
  CHECK(error_of(R"({"grid":{"nx":64.5}})") == "grid.nx must be an integer");
  CHECK(error_of(R"({"output":{"heatmaps":1}})") == "output.heatmaps must be a boolean");
  CHECK(error_of(R"([1,2])") == "scenario must be a JSON object");
}

TEST_CASE("parse errors carry line and column") {
  try {
    load_scenario("{\n  \"grid\": {\"nx\": 32,}\n}");
    FAIL("expected a parse error");
  } catch (const ScenarioParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 21);  // the stray closing brace
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("overrides") {
  const Scenario s = load_scenario(R"({
    "grid": {"radius": 2.0, "nx": 32},
    "params": {"beta0": 0.0, "flux_w": 0.0},
    "schedule": {"morning": [0.1, 0.3], "evening": [0.6, 0.8], "lambda_m": 10},
    "initial": {"i0": [{"center": [0, 0], "amplitude": 0.9, "width": 0.5}], "W0": 2.5},
    "run": {"days": 3, "substeps_per_day": 100, "wealth_substeps_per_day": 400},
    "output": {"snapshot_every": 0, "heatmaps": true}
  })");
  CHECK(s.grid.radius == 2.0);
  CHECK(s.params.beta0 == 0.0);
  CHECK(s.schedule.morning_start == 0.1);
  CHECK(s.schedule.lambda_m == 10.0);
  CHECK(s.schedule.lambda_e == 25.0);
  REQUIRE(s.initial.efficiency_bumps.has_value());
  CHECK(s.initial.efficiency_bumps->size() == 1);
  CHECK(s.initial.wealth == 2.5);
  CHECK(s.run.wealth_substeps_per_day == 400);
  CHECK(s.output.heatmaps);
}

TEST_CASE("automatic wealth substeps satisfy the diffusion bound") {
  const Scenario s = default_scenario();
  const Grid g(s.grid.radius, s.grid.nx);
  const int n = wealth_substeps(s, g);
  CHECK(n >= s.run.substeps_per_day);
  CHECK(s.params.nu * (1.0 / n) / (g.h() * g.h()) <= 0.25);
  CHECK(s.params.nu * (1.0 / (n - 1)) / (g.h() * g.h()) > 0.25);
}

#include "hostmarket/errors.hpp"
#include "hostmarket/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <string>

using namespace hostmarket;
namespace fs = std::filesystem;

namespace {

const std::string kScenarioDir = HOSTMARKET_SCENARIO_DIR;

const char* kMinimal = R"({
  "market": {"num_buildings": 10, "tenants_per_building": 5, "externality_cost": 0.2},
  "demand": {"family": "linear", "intercept": 2.0, "slope": 0.04},
  "supply": {"family": "linear", "p_min": 0.0, "p_max": 1.25}
})";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "test.json");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal file gets defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.schema_version == 1);
  CHECK(s.name == "scenario");
  CHECK(s.market.base_utility == 0.0);
  CHECK(s.market.num_buildings == 10);
  CHECK(s.solver == SolverOptions{});
  CHECK_FALSE(s.abm.has_value());
  CHECK_FALSE(s.sweep.has_value());
  CHECK(std::get<LinearDemand>(s.demand) == LinearDemand{2.0, 0.04});
}

TEST_CASE("canonical S0 file") {
  const Scenario s = load_scenario(kScenarioDir + "/s0.json");
  CHECK(s.name == "S0");
  CHECK(s.market == MarketParams{10, 5, 10.0, 0.2});
  CHECK(std::get<LinearSupply>(s.supply) == LinearSupply{0.0, 1.25});
}

TEST_CASE("constraint violations name the field") {
  CHECK(error_of(replace(kMinimal, "\"slope\": 0.04", "\"slope\": -0.04")).find("demand.slope") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"num_buildings\": 10", "\"num_buildings\": 0")).find("market.num_buildings") !=
        std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"num_buildings\": 10", "\"num_buildings\": 2.5")).find("must be an integer") !=
        std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"slope\": 0.04", "\"slop\": 0.04")).find("demand.slope is required") !=
        std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"family\": \"linear\", \"intercept\"", "\"family\": \"cubic\", \"intercept\""))
            .find("demand.family") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"externality_cost\": 0.2", "\"externality_cost\": 0.2, \"colour\": 1"))
            .find("market.colour is not a recognized field") != std::string::npos);
  CHECK(error_of(std::string(kMinimal).insert(1, "\"schema_version\": 2,")).find("schema_version") != std::string::npos);
}

TEST_CASE("parse errors report line and column") {
  const std::string broken = "{\n  \"market\": {\n    \"num_buildings\": 10,,\n  }\n}";
  const std::string message = error_of(broken);
  CHECK(message.find("test.json") != std::string::npos);
  CHECK(message.find("line 3") != std::string::npos);
}

TEST_CASE("abm block") {
  const std::string text = replace(kMinimal, "\"supply\"",
                                   "\"abm\": {\"seed\": 7, \"moving_cost\": 0.5, \"initial_price\": null}, \"supply\"");
  const Scenario s = parse_scenario(text);
  REQUIRE(s.abm.has_value());
  CHECK(s.abm->seed == 7);
  CHECK(s.abm->moving_cost == 0.5);
  CHECK(s.abm->loss_aversion == 1.0);
  CHECK_FALSE(s.abm->initial_price.has_value());
  CHECK(error_of(replace(kMinimal, "\"supply\"", "\"abm\": {\"loss_aversion\": 0.5}, \"supply\""))
            .find("abm.loss_aversion") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "\"supply\"", "\"abm\": {\"seed\": -1}, \"supply\"")).find("abm.seed") !=
        std::string::npos);
}

TEST_CASE("sweep block validation") {
  const auto with_sweep = [](const std::string& sweep) {
    return replace(kMinimal, "\"supply\"", "\"sweep\": " + sweep + ", \"supply\"");
  };
  CHECK(error_of(with_sweep(R"({"parameter": "market.externality_cost", "values": []})")).find("sweep.values") !=
        std::string::npos);
  CHECK(error_of(with_sweep(R"({"parameter": "market.colour", "values": [1]})")).find("not a sweepable") !=
        std::string::npos);
  CHECK(error_of(with_sweep(R"({"parameter": "demand.elasticity", "values": [-2]})")).find("does not exist") !=
        std::string::npos);
  CHECK(error_of(with_sweep(R"({"parameter": "market.externality_cost", "values": [0.1, -0.2]})"))
            .find("sweep.values[1]") != std::string::npos);
  CHECK_NOTHROW(parse_scenario(with_sweep(R"({"parameter": "market.num_buildings", "values": [5, 10]})")));
}

TEST_CASE("round trip through the canonical form") {
  Scenario s = load_scenario(kScenarioDir + "/s0.json");
  s.abm = ABMConfig{};
  s.abm->seed = 123456789012345ULL;
  s.abm->initial_price = 0.1 + 0.2;
  s.sweep = SweepSpec{"market.externality_cost", {0.1, 0.2, 1.0 / 3.0}};
  const Scenario back = parse_scenario(to_json_string(s));
  CHECK(back == s);

  const fs::path tmp = fs::temp_directory_path() / "hostmarket_roundtrip.json";
  save_scenario(s, tmp);
  CHECK(load_scenario(tmp) == s);
  fs::remove(tmp);

  for (const char* file : {"s0.json", "s0_abm.json", "s0_sweep_cost.json", "elastic_logistic.json"}) {
    const Scenario loaded = load_scenario(kScenarioDir + "/" + file);
    CHECK(parse_scenario(to_json_string(loaded)) == loaded);
  }
}

TEST_CASE("run scenario: S0") {
  const ScenarioRun run = run_scenario(load_scenario(kScenarioDir + "/s0.json"));
  CHECK(run.sorting.theta_star == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(run.comparison.deadweight_loss == doctest::Approx(0.6657).epsilon(1e-4));
  CHECK(run.free_price_verdict == ListingVerdict::harmful);
  CHECK_FALSE(run.abm.has_value());
}

TEST_CASE("run scenario: S0 with simulation") {
  const ScenarioRun run = run_scenario(load_scenario(kScenarioDir + "/s0_abm.json"));
  REQUIRE(run.abm.has_value());
  CHECK(run.abm->converged);
  CHECK(run.abm->final_state.theta == 0.5);
}

TEST_CASE("run scenario: divergent surplus is reported with a hint") {
  Scenario s = parse_scenario(kMinimal);
  s.name = "inelastic";
  s.demand = ConstantElasticityDemand{50.0, -0.5};
  try {
    run_scenario(s);
    FAIL("expected UnsupportedConfiguration");
  } catch (const UnsupportedConfiguration& e) {
    const std::string message = e.what();
    CHECK(message.find("scenario 'inelastic'") != std::string::npos);
    CHECK(message.find("elasticity < -1") != std::string::npos);
  }
}

TEST_CASE("sweep over externality cost") {
  const SweepTable table = run_sweep(load_scenario(kScenarioDir + "/s0_sweep_cost.json"));
  REQUIRE(table.size() == 3);
  // theta* = (a - c n) / (b A n)
  const double expected[] = {0.75, 0.5, 0.25};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(table[i].theta_star - expected[i]) <= 1e-9);
  CHECK(table[0].value == 0.1);
}

TEST_CASE("sweep over building count lowers the free price") {
  Scenario s = load_scenario(kScenarioDir + "/s0.json");
  s.sweep = SweepSpec{"market.num_buildings", {10, 20, 40}};
  const SweepTable table = run_sweep(s);
  CHECK(table[1].p_free <= table[0].p_free);
  CHECK(table[2].p_free <= table[1].p_free);
}

TEST_CASE("sweep rows are independent of order and threads") {
  Scenario s = load_scenario(kScenarioDir + "/elastic_logistic.json");
  const SweepTable forward = run_sweep(s, 1);
  std::reverse(s.sweep->values.begin(), s.sweep->values.end());
  const SweepTable backward = run_sweep(s, 3);
  REQUIRE(forward.size() == backward.size());
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const SweepRow& a = forward[i];
    const SweepRow& b = backward[forward.size() - 1 - i];
    CHECK(std::memcmp(&a.theta_star, &b.theta_star, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.p_free, &b.p_free, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.deadweight_loss, &b.deadweight_loss, sizeof(double)) == 0);
  }
}

TEST_CASE("sweep requires a sweep block") {
  CHECK_THROWS_AS(run_sweep(parse_scenario(kMinimal)), ScenarioError);
}

TEST_CASE("utility curves") {
  const Scenario s = load_scenario(kScenarioDir + "/s0.json");
  const auto points = emit_utility_curves(s, 101);
  REQUIRE(points.size() == 101);
  CHECK(points.front().theta == 0.0);
  CHECK(points.back().theta == 1.0);
  CHECK(points[0].u_allow == doctest::Approx(10.0 + 2.0 - 1.0));
  CHECK(points[50].u_allow == doctest::Approx(10.0));
  for (const auto& p : points) CHECK(p.u_forbid == 10.0);
  CHECK_THROWS_AS(emit_utility_curves(s, 1), ConfigError);
}

TEST_CASE("utility curves change sign in exactly one cell for interior scenarios") {
  for (double cost : {0.13, 0.2, 0.31}) {
    for (int grid : {2, 7, 101, 1000}) {
      Scenario s = load_scenario(kScenarioDir + "/s0.json");
      s.market.externality_cost = cost;
      const auto points = emit_utility_curves(s, grid);
      const double theta_star = solve_sorting_equilibrium(s.market, s.demand).theta_star;
      int cells = 0;
      for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double left = points[i].u_allow - points[i].u_forbid;
        const double right = points[i + 1].u_allow - points[i + 1].u_forbid;
        if (left >= 0.0 && right < 0.0) {
          ++cells;
          CHECK(points[i].theta <= theta_star);
          CHECK(theta_star <= points[i + 1].theta);
        }
      }
      CHECK(cells == 1);
    }
  }
}

}

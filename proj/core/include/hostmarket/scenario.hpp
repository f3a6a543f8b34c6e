#pragma once

#include "hostmarket/abm.hpp"
#include "hostmarket/curves.hpp"
#include "hostmarket/equilibrium.hpp"
#include "hostmarket/errors.hpp"
#include "hostmarket/market.hpp"
#include "hostmarket/welfare.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hostmarket {

inline constexpr int kScenarioSchemaVersion = 1;

/// Scenario file could not be parsed or violates a constraint. The message
/// names the file position or the offending field.
class ScenarioError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

struct SweepSpec {
  std::string parameter;  // dotted path, e.g. "market.externality_cost"
  std::vector<double> values;

  bool operator==(const SweepSpec&) const = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name = "scenario";
  MarketParams market;
  DemandCurve demand = LinearDemand{1.0, 1.0};
  SupplyPropensity supply = LinearSupply{0.0, 1.0};
  SolverOptions solver;
  std::optional<ABMConfig> abm;
  std::optional<SweepSpec> sweep;

  bool operator==(const Scenario&) const = default;
};

/// Parameter paths a sweep may vary.
const std::vector<std::string>& sweepable_parameters();

Scenario parse_scenario(std::string_view text, std::string_view source = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form; every field written explicitly, keys in fixed order.
std::string to_json_string(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Checks every numeric constraint, including each swept value applied in turn.
void validate(const Scenario& scenario);

/// Copy of the scenario with one parameter replaced. Throws ScenarioError for
/// unknown paths, paths that do not exist for the chosen curve family, and
/// non-integral values for integer fields.
Scenario with_parameter(Scenario scenario, std::string_view path, double value);

struct ScenarioRun {
  FreeListingEquilibrium free_listing;
  SortingEquilibrium sorting;
  PlannerSolution planner;
  RegimeComparison comparison;
  ListingVerdict free_price_verdict = ListingVerdict::marginal;
  std::optional<ABMResult> abm;
};

/// Solves all closed regimes; runs the simulation when the scenario has an
/// abm block. Solver errors are rethrown with the scenario name prepended.
ScenarioRun run_scenario(const Scenario& scenario);

struct SweepRow {
  double value = 0.0;
  double theta_star = 0.0;
  double p_sorting = 0.0;
  double p_free = 0.0;
  double L_free = 0.0;
  double welfare_free = 0.0;
  double welfare_sorting = 0.0;
  double deadweight_loss = 0.0;
  Corner corner = Corner::interior;
};

using SweepTable = std::vector<SweepRow>;

/// One row per swept value, in the order given. Rows are independent and may
/// be computed on `jobs` threads.
SweepTable run_sweep(const Scenario& scenario, int jobs = 1);

struct UtilityPoint {
  double theta = 0.0;
  double u_allow = 0.0;   // u0 + P(theta A n) - c n
  double u_forbid = 0.0;  // u0
};

/// Utility of a tenant in an allowing vs. a forbidding building over an even
/// theta grid on [0, 1]. grid_size must be >= 2.
std::vector<UtilityPoint> emit_utility_curves(const Scenario& scenario, int grid_size);

}  // namespace hostmarket

#pragma once

#include "hostmarket/abm.hpp"
#include "hostmarket/scenario.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace hostmarket {

// Column headers. These are part of the file contract; do not reorder.
inline constexpr const char* kEquilibriaHeader = "metric,value";
inline constexpr const char* kSweepHeader =
    "swept_value,theta_star,p_sorting,p_free,L_free,welfare_free,welfare_sorting,deadweight_loss,corner";
inline constexpr const char* kTrajectoryHeader = "round,theta,price,listings,mean_rent_premium";
inline constexpr const char* kUtilityCurvesHeader = "theta,u_allow,u_forbid";

/// Shortest round-trippable text: 17 significant digits, "inf"/"-inf"/"nan" otherwise.
std::string format_real(double x);

void write_equilibria_csv(std::ostream& out, const ScenarioRun& run);
void write_sweep_csv(std::ostream& out, const SweepTable& table);
void write_trajectory_csv(std::ostream& out, const ABMResult& result);
void write_utility_curves_csv(std::ostream& out, const std::vector<UtilityPoint>& points);

// Machine-readable JSON summaries, one document per run.
std::string summary_json(const Scenario& scenario, const ScenarioRun& run);
std::string summary_json(const Scenario& scenario, const SweepTable& table);
std::string summary_json(const Scenario& scenario, const std::vector<UtilityPoint>& points);
std::string summary_json(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                         const std::vector<ABMResult>& results);

}  // namespace hostmarket

#include "hostmarket/reports.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace hostmarket {
namespace {

using ordered_json = nlohmann::ordered_json;

// JSON has no infinity; unbounded values (e.g. a constant-elasticity choke
// price) are written as strings.
ordered_json real(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

ordered_json abm_summary(const ABMResult& r) {
  int allowing = 0;
  for (const auto& b : r.final_state.buildings) allowing += b.policy == Policy::allow ? 1 : 0;
  return {
      {"seed", r.final_state.rng_seed},
      {"converged", r.converged},
      {"rounds_used", r.rounds_used},
      {"final_theta", real(r.final_state.theta)},
      {"allowing_buildings", allowing},
      {"final_price", real(r.final_state.price)},
      {"final_listings", real(r.final_state.listings)},
      {"mean_rent_premium", real(mean_rent_premium(r.final_state))},
      {"total_moves", r.final_state.total_moves},
  };
}

ordered_json header(const Scenario& s, const char* command) {
  return {{"schema_version", s.schema_version}, {"scenario", s.name}, {"command", command}};
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

void write_equilibria_csv(std::ostream& out, const ScenarioRun& run) {
  const RegimeComparison& c = run.comparison;
  out << kEquilibriaHeader << '\n';
  auto row = [&](const char* name, const std::string& value) { out << name << ',' << value << '\n'; };
  row("theta_star", format_real(run.sorting.theta_star));
  row("p_sorting", format_real(run.sorting.price));
  row("L_sorting", format_real(run.sorting.listings));
  row("corner", std::string(to_string(run.sorting.corner)));
  row("theta_planner", format_real(run.planner.theta_opt));
  row("welfare_planner", format_real(run.planner.welfare));
  row("corner_planner", std::string(to_string(run.planner.corner)));
  row("p_free", format_real(run.free_listing.price));
  row("L_free", format_real(run.free_listing.listings));
  row("excess_demand_free", format_real(run.free_listing.excess_demand_residual));
  row("free_price_verdict", std::string(to_string(run.free_price_verdict)));
  row("welfare_free", format_real(c.welfare_free));
  row("welfare_sorting", format_real(c.welfare_sorting));
  row("deadweight_loss", format_real(c.deadweight_loss));
  row("overlisting", format_real(c.overlisting));
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << kSweepHeader << '\n';
  for (const auto& r : table) {
    out << format_real(r.value) << ',' << format_real(r.theta_star) << ',' << format_real(r.p_sorting) << ','
        << format_real(r.p_free) << ',' << format_real(r.L_free) << ',' << format_real(r.welfare_free) << ','
        << format_real(r.welfare_sorting) << ',' << format_real(r.deadweight_loss) << ',' << to_string(r.corner)
        << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const ABMResult& result) {
  out << kTrajectoryHeader << '\n';
  for (std::size_t r = 0; r < result.theta_trajectory.size(); ++r) {
    out << r << ',' << format_real(result.theta_trajectory[r]) << ',' << format_real(result.price_trajectory[r])
        << ',' << format_real(result.listings_trajectory[r]) << ','
        << format_real(result.mean_rent_premium_trajectory[r]) << '\n';
  }
}

void write_utility_curves_csv(std::ostream& out, const std::vector<UtilityPoint>& points) {
  out << kUtilityCurvesHeader << '\n';
  for (const auto& p : points) {
    out << format_real(p.theta) << ',' << format_real(p.u_allow) << ',' << format_real(p.u_forbid) << '\n';
  }
}

std::string summary_json(const Scenario& s, const ScenarioRun& run) {
  ordered_json root = header(s, "solve");
  const RegimeComparison& c = run.comparison;
  root["free_listing"] = {
      {"price", real(run.free_listing.price)},
      {"listings", real(run.free_listing.listings)},
      {"excess_demand_residual", real(run.free_listing.excess_demand_residual)},
      {"price_verdict", to_string(run.free_price_verdict)},
  };
  root["sorting"] = {
      {"theta_star", real(run.sorting.theta_star)},
      {"price", real(run.sorting.price)},
      {"listings", real(run.sorting.listings)},
      {"corner", to_string(run.sorting.corner)},
  };
  root["planner"] = {
      {"theta_opt", real(run.planner.theta_opt)},
      {"welfare", real(run.planner.welfare)},
      {"corner", to_string(run.planner.corner)},
  };
  root["welfare"] = {
      {"welfare_free", real(c.welfare_free)},
      {"welfare_sorting", real(c.welfare_sorting)},
      {"deadweight_loss", real(c.deadweight_loss)},
      {"overlisting", real(c.overlisting)},
  };
  if (run.abm) root["abm"] = abm_summary(*run.abm);
  return root.dump(2) + "\n";
}

std::string summary_json(const Scenario& s, const SweepTable& table) {
  ordered_json root = header(s, "sweep");
  root["parameter"] = s.sweep ? s.sweep->parameter : "";
  ordered_json rows = ordered_json::array();
  for (const auto& r : table) {
    rows.push_back({
        {"swept_value", real(r.value)},
        {"theta_star", real(r.theta_star)},
        {"p_sorting", real(r.p_sorting)},
        {"p_free", real(r.p_free)},
        {"L_free", real(r.L_free)},
        {"welfare_free", real(r.welfare_free)},
        {"welfare_sorting", real(r.welfare_sorting)},
        {"deadweight_loss", real(r.deadweight_loss)},
        {"corner", to_string(r.corner)},
    });
  }
  root["rows"] = rows;
  return root.dump(2) + "\n";
}

std::string summary_json(const Scenario& s, const std::vector<UtilityPoint>& points) {
  ordered_json root = header(s, "curves");
  ordered_json rows = ordered_json::array();
  for (const auto& p : points) {
    rows.push_back({{"theta", real(p.theta)}, {"u_allow", real(p.u_allow)}, {"u_forbid", real(p.u_forbid)}});
  }
  root["points"] = rows;
  return root.dump(2) + "\n";
}

std::string summary_json(const Scenario& s, const std::vector<std::uint64_t>& seeds,
                         const std::vector<ABMResult>& results) {
  ordered_json root = header(s, "simulate");
  ordered_json runs = ordered_json::array();
  double theta_sum = 0.0;
  int converged = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    ordered_json entry = abm_summary(results[i]);
    entry["seed"] = seeds[i];
    runs.push_back(entry);
    theta_sum += results[i].final_state.theta;
    converged += results[i].converged ? 1 : 0;
  }
  root["runs"] = runs;
  root["converged_runs"] = converged;
  root["mean_final_theta"] = results.empty() ? ordered_json(nullptr) : real(theta_sum / results.size());
  return root.dump(2) + "\n";
}

}  // namespace hostmarket

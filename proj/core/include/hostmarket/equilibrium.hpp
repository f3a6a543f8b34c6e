#pragma once

#include "hostmarket/curves.hpp"
#include "hostmarket/market.hpp"

#include <string_view>

namespace hostmarket {

struct SolverOptions {
  /// Bracket width at which root searches stop.
  double tolerance = 1e-10;
  /// Upper end of the price search when inverse demand is unbounded.
  double price_cap = 1e6;

  bool operator==(const SolverOptions&) const = default;
};

enum class Corner { interior, all_forbid, all_allow };

std::string_view to_string(Corner corner);

/// Market clearing with no owner control: D(p) = A n f(p).
struct FreeListingEquilibrium {
  double price = 0.0;
  double listings = 0.0;
  double excess_demand_residual = 0.0;  // D(p) - listings at the returned price
};

/// Owner-policy equilibrium where tenants are indifferent between building types.
struct SortingEquilibrium {
  double theta_star = 0.0;  // share of buildings allowing listing
  double price = 0.0;
  double listings = 0.0;
  Corner corner = Corner::interior;
};

struct PlannerSolution {
  double theta_opt = 0.0;
  double welfare = 0.0;
  Corner corner = Corner::interior;
};

FreeListingEquilibrium solve_free_listing(const MarketParams& params, const DemandCurve& demand,
                                          const SupplyPropensity& f, const SolverOptions& options = {});

/// Solves P(theta A n) = c n for theta in [0, 1].
///
/// all_forbid when even the first listing is worth less than its social cost
/// (P(0) < c n), all_allow when the last one still clears it (P(A n) >= c n).
/// An exact tie P(0) == c n is reported as interior with theta_star = 0.
SortingEquilibrium solve_sorting_equilibrium(const MarketParams& params, const DemandCurve& demand,
                                             const SolverOptions& options = {});

/// Maximizes W(theta) = gross_benefit(theta A n) - theta A n c n by golden-section
/// search. The corner label describes where the maximizer landed.
PlannerSolution solve_planner_optimum(const MarketParams& params, const DemandCurve& demand,
                                      const SolverOptions& options = {});

}  // namespace hostmarket

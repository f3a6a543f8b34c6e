#include "hostmarket/equilibrium.hpp"

#include "hostmarket/errors.hpp"
#include "hostmarket/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hostmarket {

void validate(const MarketParams& params) {
  if (params.num_buildings < 1) throw ConfigError("market.num_buildings must be >= 1");
  if (params.tenants_per_building < 1) throw ConfigError("market.tenants_per_building must be >= 1");
  if (!std::isfinite(params.base_utility)) throw ConfigError("market.base_utility must be finite");
  if (!(params.externality_cost >= 0.0) || !std::isfinite(params.externality_cost))
    throw ConfigError("market.externality_cost must be >= 0");
}

std::string_view to_string(Corner corner) {
  switch (corner) {
    case Corner::interior: return "interior";
    case Corner::all_forbid: return "all_forbid";
    case Corner::all_allow: return "all_allow";
  }
  return "unknown";
}

FreeListingEquilibrium solve_free_listing(const MarketParams& params, const DemandCurve& demand,
                                          const SupplyPropensity& f, const SolverOptions& options) {
  const double capacity = params.total_tenants();
  // Constant-elasticity demand is infinite at p = 0; capping keeps the sign.
  auto excess = [&](double p) {
    const double d = std::min(demand_quantity(demand, p), std::numeric_limits<double>::max());
    return d - capacity * supply_fraction(f, p);
  };

  FreeListingEquilibrium out;
  const double excess_at_zero = excess(0.0);
  if (excess_at_zero <= 0.0) {
    // Willing hosts outnumber guests even at a zero price; guests are the short side.
    out.price = 0.0;
    out.listings = demand_quantity(demand, 0.0);
    out.excess_demand_residual = excess_at_zero;
    return out;
  }

  double hi = choke_price(demand);
  if (!std::isfinite(hi)) {
    hi = std::min(1.0, options.price_cap);
    while (excess(hi) > 0.0 && hi < options.price_cap) hi = std::min(2.0 * hi, options.price_cap);
  }
  if (excess(hi) > 0.0) {
    // Nobody is willing to host anywhere on the search interval.
    out.price = hi;
    out.listings = 0.0;
    out.excess_demand_residual = demand_quantity(demand, hi);
    return out;
  }

  out.price = bracketed_root(excess, 0.0, hi, options.tolerance);
  out.listings = capacity * supply_fraction(f, out.price);
  out.excess_demand_residual = demand_quantity(demand, out.price) - out.listings;
  return out;
}

SortingEquilibrium solve_sorting_equilibrium(const MarketParams& params, const DemandCurve& demand,
                                             const SolverOptions& options) {
  const double capacity = params.total_tenants();
  const double social_cost = params.social_cost_per_listing();

  SortingEquilibrium out;
  const double price_full = inverse_demand(demand, capacity);
  if (price_full >= social_cost) {
    out.corner = Corner::all_allow;
    out.theta_star = 1.0;
    out.price = price_full;
    out.listings = capacity;
    return out;
  }

  const double choke = choke_price(demand);
  if (choke < social_cost) {
    out.corner = Corner::all_forbid;
    out.theta_star = 0.0;
    out.price = choke;
    out.listings = 0.0;
    return out;
  }

  out.corner = Corner::interior;
  if (choke == social_cost) {
    out.theta_star = 0.0;
    out.price = choke;
    return out;
  }

  // An unbounded choke price is capped so the indifference gap stays finite;
  // the cap exceeds c n, so the sign at theta = 0 is preserved.
  auto indifference_gap = [&](double theta) {
    const double p = std::min(inverse_demand(demand, theta * capacity), std::numeric_limits<double>::max());
    return p - social_cost;
  };
  out.theta_star = bracketed_root(indifference_gap, 0.0, 1.0, options.tolerance);
  out.listings = out.theta_star * capacity;
  out.price = inverse_demand(demand, out.listings);
  return out;
}

PlannerSolution solve_planner_optimum(const MarketParams& params, const DemandCurve& demand,
                                      const SolverOptions& options) {
  if (!has_finite_gross_benefit(demand)) {
    // Surface the divergent-integral error before searching.
    (void)gross_benefit(demand, 1.0);
  }
  const double capacity = params.total_tenants();
  const double social_cost = params.social_cost_per_listing();
  auto welfare = [&](double theta) {
    const double listings = theta * capacity;
    return gross_benefit(demand, listings) - listings * social_cost;
  };

  PlannerSolution out;
  out.theta_opt = golden_section_maximize(welfare, 0.0, 1.0, options.tolerance);
  out.welfare = welfare(out.theta_opt);
  if (out.theta_opt <= 0.0) {
    out.corner = Corner::all_forbid;
  } else if (out.theta_opt >= 1.0) {
    out.corner = Corner::all_allow;
  } else {
    out.corner = Corner::interior;
  }
  return out;
}

}  // namespace hostmarket

#include "hostmarket/welfare.hpp"

#include "hostmarket/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hostmarket {

std::string_view to_string(ListingVerdict verdict) {
  switch (verdict) {
    case ListingVerdict::beneficial: return "beneficial";
    case ListingVerdict::marginal: return "marginal";
    case ListingVerdict::harmful: return "harmful";
  }
  return "unknown";
}

double welfare_at_listings(const MarketParams& params, const DemandCurve& demand, double listings) {
  const double capacity = params.total_tenants();
  constexpr double slack = 1e-9;
  if (std::isnan(listings) || listings < -slack || listings > capacity + slack) {
    throw DomainError("listings must lie in [0, " + std::to_string(capacity) + "], got " +
                      std::to_string(listings));
  }
  const double l = std::clamp(listings, 0.0, capacity);
  return gross_benefit(demand, l) - l * params.social_cost_per_listing();
}

ListingVerdict is_listing_efficient(double price, const MarketParams& params, double tol) {
  const double gap = price - params.social_cost_per_listing();
  if (gap > tol) return ListingVerdict::beneficial;
  if (gap < -tol) return ListingVerdict::harmful;
  return ListingVerdict::marginal;
}

RegimeComparison compare_regimes(const MarketParams& params, const DemandCurve& demand,
                                 const SupplyPropensity& f, const SolverOptions& options) {
  RegimeComparison out;
  out.free_listing = solve_free_listing(params, demand, f, options);
  out.sorting = solve_sorting_equilibrium(params, demand, options);
  out.welfare_free = welfare_at_listings(params, demand, out.free_listing.listings);
  out.welfare_sorting = welfare_at_listings(params, demand, out.sorting.listings);
  out.deadweight_loss = out.welfare_sorting - out.welfare_free;
  out.overlisting = out.free_listing.listings - out.sorting.listings;
  return out;
}

}  // namespace hostmarket

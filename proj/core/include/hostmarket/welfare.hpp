#pragma once

#include "hostmarket/curves.hpp"
#include "hostmarket/equilibrium.hpp"
#include "hostmarket/market.hpp"

#include <string_view>

namespace hostmarket {

enum class ListingVerdict { beneficial, marginal, harmful };

std::string_view to_string(ListingVerdict verdict);

/// Welfare levels of the two regimes and the loss from letting everyone list.
struct RegimeComparison {
  FreeListingEquilibrium free_listing;
  SortingEquilibrium sorting;
  double welfare_free = 0.0;
  double welfare_sorting = 0.0;
  double deadweight_loss = 0.0;  // welfare_sorting - welfare_free
  double overlisting = 0.0;      // free listings minus sorting listings
};

/// Gross benefit of L listings minus the nuisance they impose, L c n.
/// Throws DomainError unless 0 <= L <= A n (up to 1e-9 slack).
double welfare_at_listings(const MarketParams& params, const DemandCurve& demand, double listings);

/// Compares a host's private benefit p with the building-wide cost c n.
ListingVerdict is_listing_efficient(double price, const MarketParams& params, double tol = 1e-9);

RegimeComparison compare_regimes(const MarketParams& params, const DemandCurve& demand,
                                 const SupplyPropensity& f, const SolverOptions& options = {});

}  // namespace hostmarket

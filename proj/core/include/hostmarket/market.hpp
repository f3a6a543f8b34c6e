#pragma once

namespace hostmarket {

/// Primitives of one rental market: A buildings of n tenants each, base
/// utility u0 and the per-listing nuisance cost c borne by every tenant of
/// a building.
struct MarketParams {
  int num_buildings = 1;
  int tenants_per_building = 1;
  double base_utility = 0.0;
  double externality_cost = 0.0;

  [[nodiscard]] int total_tenants() const { return num_buildings * tenants_per_building; }
  /// Cost a single listing imposes on its whole building, c * n.
  [[nodiscard]] double social_cost_per_listing() const {
    return externality_cost * tenants_per_building;
  }

  bool operator==(const MarketParams&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(const MarketParams& params);

}  // namespace hostmarket

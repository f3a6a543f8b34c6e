#pragma once

#include "hostmarket/curves.hpp"
#include "hostmarket/market.hpp"
#include "hostmarket/rng.hpp"

#include <cmath>
#include <cstdint>

namespace testing_support {

struct RandomScenario {
  hostmarket::MarketParams market;
  hostmarket::DemandCurve demand;
  hostmarket::SupplyPropensity supply;
};

inline double between(hostmarket::Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline hostmarket::SupplyPropensity random_supply(hostmarket::Rng& rng) {
  if (rng.uniform() < 0.5) {
    const double lo = between(rng, 0.0, 1.0);
    return hostmarket::LinearSupply{lo, lo + between(rng, 0.1, 3.0)};
  }
  return hostmarket::LogisticSupply{between(rng, 0.2, 3.0), between(rng, 0.5, 10.0)};
}

/// Linear demand where c n is placed so the sorting outcome lands in the
/// interior or either corner: the target theta is drawn from [-0.3, 1.3].
inline RandomScenario random_linear_scenario(hostmarket::Rng& rng) {
  RandomScenario s;
  s.market.num_buildings = 1 + static_cast<int>(rng.below(50));
  s.market.tenants_per_building = 1 + static_cast<int>(rng.below(20));
  s.market.base_utility = between(rng, -5.0, 50.0);
  const double a = between(rng, 0.5, 5.0);
  const double b = between(rng, 0.2, 5.0) * a / s.market.total_tenants();
  const double target = between(rng, -0.3, 1.3);
  const double social_cost = std::max(0.0, a - b * s.market.total_tenants() * target);
  s.market.externality_cost = social_cost / s.market.tenants_per_building;
  s.demand = hostmarket::LinearDemand{a, b};
  s.supply = random_supply(rng);
  return s;
}

/// Constant-elasticity demand with a convergent surplus integral (eps < -1).
/// The unbounded choke price rules out the all_forbid corner.
inline RandomScenario random_elastic_scenario(hostmarket::Rng& rng) {
  RandomScenario s;
  s.market.num_buildings = 1 + static_cast<int>(rng.below(50));
  s.market.tenants_per_building = 1 + static_cast<int>(rng.below(20));
  s.market.base_utility = between(rng, -5.0, 50.0);
  const double capacity = s.market.total_tenants();
  const double eps = between(rng, -3.0, -1.1);
  const double k = between(rng, 0.1, 2.0) * capacity;
  const double target = between(rng, 0.02, 1.3);
  const double social_cost = std::pow(target * capacity / k, 1.0 / eps);
  s.market.externality_cost = social_cost / s.market.tenants_per_building;
  s.demand = hostmarket::ConstantElasticityDemand{k, eps};
  s.supply = random_supply(rng);
  return s;
}

inline RandomScenario random_scenario(hostmarket::Rng& rng) {
  return rng.uniform() < 0.5 ? random_linear_scenario(rng) : random_elastic_scenario(rng);
}

}  // namespace testing_support

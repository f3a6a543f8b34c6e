#pragma once

#include "hostmarket/curves.hpp"
#include "hostmarket/market.hpp"
#include "hostmarket/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hostmarket {

enum class Policy { forbid, allow };

struct Tenant {
  int id = 0;
  /// Lowest short-term rental price at which this tenant is willing to host.
  double reservation_price = 0.0;
  int building = 0;
  bool listing = false;
};

struct Building {
  int id = 0;
  Policy policy = Policy::forbid;
  bool regulated = false;  // rent-stabilized; never allows listing
  /// Rent charged above a forbidding building. Always 0 while forbidding.
  double rent_premium = 0.0;
  std::vector<int> roster;
};

struct ABMConfig {
  double price_step = 0.02;          // tatonnement rate, price units per unit of excess demand
  double moving_cost = 0.0;          // kappa, paid by every tenant who relocates
  double loss_aversion = 1.0;        // lambda >= 1, weight on the losing side of a move
  double mixing_correlation = 0.0;   // rho in [0, 1]; 1 clusters tenants by type
  double regulated_fraction = 0.0;   // share of buildings that always forbid
  int max_rounds = 500;
  double convergence_tol = 1e-6;
  int convergence_window = 50;
  std::uint64_t seed = 0;
  std::optional<double> initial_price;  // defaults to the free-listing price
  double rent_adjustment = 0.5;         // share of the gap to the target premium closed each round
  double switch_sensitivity = 1.0;      // switching probability per unit of rent gap
  double exploration_floor = 0.01;      // switching probability when no building allows yet

  bool operator==(const ABMConfig&) const = default;
};

/// Throws ConfigError naming the first out-of-range field.
void validate(const ABMConfig& config);

struct SortingState {
  int round = 0;
  double price = 0.0;
  std::vector<Building> buildings;
  std::vector<Tenant> tenants;
  double theta = 0.0;  // allowing buildings / A
  double listings = 0.0;
  std::uint64_t rng_seed = 0;
  Rng rng{0};
  int moves_last_round = 0;
  long long total_moves = 0;
};

struct ABMResult {
  SortingState final_state;
  int rounds_used = 0;
  bool converged = false;
  // Index r holds the value after round r; index 0 is the initial state.
  std::vector<double> theta_trajectory;
  std::vector<double> price_trajectory;
  std::vector<double> listings_trajectory;
  std::vector<double> mean_rent_premium_trajectory;
};

/// Premium a landlord can charge for allowing listing: the rent at which a
/// willing tenant moving in from a forbidding building just breaks even,
/// valuing p as a gain and c n plus the premium as losses weighted by lambda,
/// net of the moving cost. Without frictions this is p - c n.
double rent_premium_target(double price, const MarketParams& params, const ABMConfig& config);

/// Mean rent premium over allowing buildings; 0 when none allow.
double mean_rent_premium(const SortingState& state);

/// Builds A n tenants with stratified reservation prices drawn from f and
/// places them n to a building. Every building starts out forbidding.
SortingState init_state(const MarketParams& params, const DemandCurve& demand, const SupplyPropensity& f,
                        const ABMConfig& config);

/// One round: listing decisions, price update, rent update, landlord policy
/// update, then pairwise relocation of mismatched tenants.
SortingState step(SortingState state, const MarketParams& params, const DemandCurve& demand,
                  const ABMConfig& config);

/// Steps until theta has not moved and the price has moved by at most
/// convergence_tol in each of the last convergence_window rounds, or
/// max_rounds is reached.
ABMResult run_to_convergence(SortingState state, const MarketParams& params, const DemandCurve& demand,
                             const ABMConfig& config);

/// Independent runs, one per seed, in input order. Runs are spread over
/// `jobs` threads; results do not depend on the thread count.
std::vector<ABMResult> run_batch(const MarketParams& params, const DemandCurve& demand,
                                 const SupplyPropensity& f, const ABMConfig& config,
                                 std::span<const std::uint64_t> seeds, int jobs = 1);

}  // namespace hostmarket

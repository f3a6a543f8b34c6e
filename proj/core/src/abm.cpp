#include "hostmarket/abm.hpp"

#include "hostmarket/equilibrium.hpp"
#include "hostmarket/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hostmarket {
namespace {

// Demand is infinite at p = 0 for constant elasticity.
constexpr double kDemandCap = 1e12;

bool is_willing(const Tenant& t, double price) { return t.reservation_price <= price; }

bool allows(const Building& b) { return b.policy == Policy::allow; }

int count_allowing(const SortingState& state) {
  return static_cast<int>(std::count_if(state.buildings.begin(), state.buildings.end(), allows));
}

// Gains count once; losses are weighted by lambda and the move pays kappa.
double move_value(double gains, double losses, const ABMConfig& config) {
  return gains - config.moving_cost - config.loss_aversion * losses;
}

void split(double delta, double& gains, double& losses) {
  if (delta >= 0.0) {
    gains += delta;
  } else {
    losses -= delta;
  }
}

int listings_in(const SortingState& state, const Building& b) {
  if (!allows(b)) return 0;
  int k = 0;
  for (int id : b.roster) k += is_willing(state.tenants[id], state.price) ? 1 : 0;
  return k;
}

void refresh_listings(SortingState& state) {
  double total = 0.0;
  for (auto& t : state.tenants) {
    t.listing = allows(state.buildings[t.building]) && is_willing(t, state.price);
    total += t.listing ? 1.0 : 0.0;
  }
  state.listings = total;
  state.theta = static_cast<double>(count_allowing(state)) / static_cast<double>(state.buildings.size());
}

void update_price(SortingState& state, const DemandCurve& demand, const ABMConfig& config) {
  const double excess = std::min(demand_quantity(demand, state.price), kDemandCap) - state.listings;
  state.price = std::max(0.0, state.price + config.price_step * excess);
}

void update_rents(SortingState& state, const MarketParams& params, const ABMConfig& config) {
  const double target = rent_premium_target(state.price, params, config);
  for (auto& b : state.buildings) {
    if (allows(b)) {
      b.rent_premium += config.rent_adjustment * (target - b.rent_premium);
    } else {
      b.rent_premium = 0.0;
    }
  }
}

void update_policies(SortingState& state, const MarketParams& params, const ABMConfig& config) {
  const double target = rent_premium_target(state.price, params, config);
  const bool none_allow = count_allowing(state) == 0;
  for (auto& b : state.buildings) {
    // One draw per building per round keeps the random stream aligned
    // regardless of which landlords are eligible to switch.
    const double u = state.rng.uniform();
    if (b.regulated) continue;
    double probability = 0.0;
    if (allows(b)) {
      if (b.rent_premium < 0.0) probability = config.switch_sensitivity * -b.rent_premium;
    } else {
      if (target > 0.0) probability = config.switch_sensitivity * target;
      if (none_allow && target >= 0.0) probability = std::max(probability, config.exploration_floor);
    }
    if (u < std::min(1.0, probability)) {
      if (allows(b)) {
        b.policy = Policy::forbid;
        b.rent_premium = 0.0;
      } else {
        b.policy = Policy::allow;
        b.rent_premium = target;
      }
    }
  }
}

void relocate(SortingState& state, const MarketParams& params, const ABMConfig& config) {
  std::vector<int> stuck_unwilling;  // unwilling tenants in allowing buildings
  std::vector<int> waiting_willing;  // willing tenants in forbidding buildings
  for (const auto& t : state.tenants) {
    const bool in_allow = allows(state.buildings[t.building]);
    const bool willing = is_willing(t, state.price);
    if (in_allow && !willing) stuck_unwilling.push_back(t.id);
    if (!in_allow && willing) waiting_willing.push_back(t.id);
  }
  state.rng.shuffle(std::span<int>(stuck_unwilling));
  state.rng.shuffle(std::span<int>(waiting_willing));

  std::vector<int> listings(state.buildings.size());
  for (const auto& b : state.buildings) listings[b.id] = listings_in(state, b);

  const double c = params.externality_cost;
  const double p = state.price;
  int moves = 0;
  const std::size_t pairs = std::min(stuck_unwilling.size(), waiting_willing.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    Tenant& leaver = state.tenants[stuck_unwilling[i]];
    Tenant& joiner = state.tenants[waiting_willing[i]];
    Building& from = state.buildings[leaver.building];
    Building& to = state.buildings[joiner.building];

    // Leaver: escapes the nuisance of the building's listings and its premium.
    double leaver_gains = 0.0;
    double leaver_losses = 0.0;
    split(c * listings[from.id], leaver_gains, leaver_losses);
    split(from.rent_premium, leaver_gains, leaver_losses);

    // Joiner: earns p, bears the nuisance including its own listing, pays the premium.
    double joiner_gains = 0.0;
    double joiner_losses = 0.0;
    split(p, joiner_gains, joiner_losses);
    split(-c * (listings[from.id] + 1), joiner_gains, joiner_losses);
    split(-from.rent_premium, joiner_gains, joiner_losses);

    if (move_value(leaver_gains, leaver_losses, config) <= 0.0 ||
        move_value(joiner_gains, joiner_losses, config) < 0.0) {
      continue;
    }

    auto& from_roster = from.roster;
    auto& to_roster = to.roster;
    *std::find(from_roster.begin(), from_roster.end(), leaver.id) = joiner.id;
    *std::find(to_roster.begin(), to_roster.end(), joiner.id) = leaver.id;
    std::swap(leaver.building, joiner.building);
    listings[from.id] += 1;
    moves += 2;
  }
  state.moves_last_round = moves;
  state.total_moves += moves;
}

}  // namespace

void validate(const ABMConfig& config) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
  };
  require(config.price_step > 0.0 && std::isfinite(config.price_step), "abm.price_step must be > 0");
  require(config.moving_cost >= 0.0 && std::isfinite(config.moving_cost), "abm.moving_cost must be >= 0");
  require(config.loss_aversion >= 1.0 && std::isfinite(config.loss_aversion), "abm.loss_aversion must be >= 1");
  require(config.mixing_correlation >= 0.0 && config.mixing_correlation <= 1.0,
          "abm.mixing_correlation must lie in [0, 1]");
  require(config.regulated_fraction >= 0.0 && config.regulated_fraction < 1.0,
          "abm.regulated_fraction must lie in [0, 1)");
  require(config.max_rounds >= 1, "abm.max_rounds must be >= 1");
  require(config.convergence_tol > 0.0, "abm.convergence_tol must be > 0");
  require(config.convergence_window >= 1, "abm.convergence_window must be >= 1");
  require(!config.initial_price || (*config.initial_price >= 0.0 && std::isfinite(*config.initial_price)),
          "abm.initial_price must be >= 0");
  require(config.rent_adjustment > 0.0 && config.rent_adjustment <= 1.0,
          "abm.rent_adjustment must lie in (0, 1]");
  require(config.switch_sensitivity >= 0.0 && std::isfinite(config.switch_sensitivity),
          "abm.switch_sensitivity must be >= 0");
  require(config.exploration_floor >= 0.0 && config.exploration_floor <= 1.0,
          "abm.exploration_floor must lie in [0, 1]");
}

double rent_premium_target(double price, const MarketParams& params, const ABMConfig& config) {
  // Break-even premium P for the incoming tenant:
  //   p - kappa - lambda (c n + P) = 0          when P >= 0 (premium is a loss)
  //   p - kappa - lambda c n - P = 0            when P < 0 (discount is a gain)
  const double surplus = price - config.moving_cost - config.loss_aversion * params.social_cost_per_listing();
  return surplus >= 0.0 ? surplus / config.loss_aversion : surplus;
}

double mean_rent_premium(const SortingState& state) {
  double sum = 0.0;
  int count = 0;
  for (const auto& b : state.buildings) {
    if (allows(b)) {
      sum += b.rent_premium;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

SortingState init_state(const MarketParams& params, const DemandCurve& demand, const SupplyPropensity& f,
                        const ABMConfig& config) {
  validate(params);
  validate(demand);
  validate(f);
  validate(config);

  SortingState state;
  state.rng_seed = config.seed;
  state.rng = Rng(config.seed);
  state.price = config.initial_price ? *config.initial_price : solve_free_listing(params, demand, f).price;

  const int num_buildings = params.num_buildings;
  const int n = params.tenants_per_building;
  const int total = params.total_tenants();

  // Stratified quantiles: tenant i draws from the i-th of N equal slices of f.
  state.tenants.resize(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    const double u = (i + state.rng.open_uniform()) / total;
    state.tenants[i].id = i;
    state.tenants[i].reservation_price = reservation_quantile(f, u);
  }

  // Placement order blends the reservation rank (rho = 1) with noise (rho = 0).
  const double rho = config.mixing_correlation;
  std::vector<double> key(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    const double noise = state.rng.uniform();
    key[i] = rho * (static_cast<double>(i) / total) + (1.0 - rho) * noise;
  }
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });

  state.buildings.resize(static_cast<std::size_t>(num_buildings));
  for (int b = 0; b < num_buildings; ++b) {
    state.buildings[b].id = b;
    state.buildings[b].roster.reserve(static_cast<std::size_t>(n));
  }
  for (int slot = 0; slot < total; ++slot) {
    const int b = slot / n;
    state.buildings[b].roster.push_back(order[slot]);
    state.tenants[order[slot]].building = b;
  }

  const auto num_regulated = static_cast<int>(std::floor(config.regulated_fraction * num_buildings));
  std::vector<int> building_ids(static_cast<std::size_t>(num_buildings));
  std::iota(building_ids.begin(), building_ids.end(), 0);
  state.rng.shuffle(std::span<int>(building_ids));
  for (int i = 0; i < num_regulated; ++i) state.buildings[building_ids[i]].regulated = true;

  refresh_listings(state);
  return state;
}

SortingState step(SortingState state, const MarketParams& params, const DemandCurve& demand,
                  const ABMConfig& config) {
  refresh_listings(state);
  update_price(state, demand, config);
  update_rents(state, params, config);
  update_policies(state, params, config);
  relocate(state, params, config);
  refresh_listings(state);
  ++state.round;
  return state;
}

ABMResult run_to_convergence(SortingState state, const MarketParams& params, const DemandCurve& demand,
                             const ABMConfig& config) {
  ABMResult result;
  auto record = [&](const SortingState& s) {
    result.theta_trajectory.push_back(s.theta);
    result.price_trajectory.push_back(s.price);
    result.listings_trajectory.push_back(s.listings);
    result.mean_rent_premium_trajectory.push_back(mean_rent_premium(s));
  };
  record(state);

  int quiet_rounds = 0;
  for (int r = 0; r < config.max_rounds; ++r) {
    const double theta_before = state.theta;
    const double price_before = state.price;
    state = step(std::move(state), params, demand, config);
    record(state);
    ++result.rounds_used;

    const bool quiet = state.theta == theta_before &&
                       std::abs(state.price - price_before) <= config.convergence_tol;
    quiet_rounds = quiet ? quiet_rounds + 1 : 0;
    if (quiet_rounds >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

std::vector<ABMResult> run_batch(const MarketParams& params, const DemandCurve& demand,
                                 const SupplyPropensity& f, const ABMConfig& config,
                                 std::span<const std::uint64_t> seeds, int jobs) {
  std::vector<ABMResult> results(seeds.size());
  detail::parallel_for_index(seeds.size(), jobs, [&](std::size_t i) {
    ABMConfig run_config = config;
    run_config.seed = seeds[i];
    results[i] = run_to_convergence(init_state(params, demand, f, run_config), params, demand, run_config);
  });
  return results;
}

}  // namespace hostmarket

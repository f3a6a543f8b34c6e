#include "hostmarket/scenario.hpp"

#include "parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hostmarket {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Walks a JSON object, tracking the dotted path for diagnostics and
// rejecting keys that were never read.
class Reader {
public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "top level" : path_, "must be an object");
  }

  [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  /// Marks an optional key as recognized and reports whether it carries a value.
  bool optional(const std::string& key) {
    seen_.insert(key);
    return has(key);
  }

  [[nodiscard]] double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail(field(key), "must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : mark(key, fallback); }

  [[nodiscard]] long long integer(const std::string& key) {
    const json& v = at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail(field(key), "must be an integer");
  }

  long long integer_or(const std::string& key, long long fallback) {
    return has(key) ? integer(key) : mark(key, fallback);
  }

  [[nodiscard]] std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    fail(field(key), "must be a nonnegative integer");
  }

  [[nodiscard]] std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail(field(key), "must be a string");
    return v.get<std::string>();
  }

  std::string string_or(const std::string& key, std::string fallback) {
    return has(key) ? string(key) : mark(key, std::move(fallback));
  }

  [[nodiscard]] Reader child(const std::string& key) { return Reader(at(key), field(key)); }

  [[nodiscard]] const json& raw(const std::string& key) { return at(key); }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) fail(field(key), "is not a recognized field");
    }
  }

  [[nodiscard]] std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ScenarioError(where + " " + what);
  }

private:
  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key) || node_.at(key).is_null()) fail(field(key), "is required");
    return node_.at(key);
  }

  template <class T>
  T mark(const std::string& key, T fallback) {
    seen_.insert(key);
    return fallback;
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

DemandCurve read_demand(Reader r) {
  const std::string family = r.string("family");
  DemandCurve out;
  if (family == "linear") {
    out = LinearDemand{r.number("intercept"), r.number("slope")};
  } else if (family == "constant_elasticity") {
    out = ConstantElasticityDemand{r.number("scale"), r.number("elasticity")};
  } else {
    Reader::fail(r.field("family"), "must be \"linear\" or \"constant_elasticity\", got \"" + family + "\"");
  }
  r.finish();
  return out;
}

SupplyPropensity read_supply(Reader r) {
  const std::string family = r.string("family");
  SupplyPropensity out;
  if (family == "linear") {
    out = LinearSupply{r.number("p_min"), r.number("p_max")};
  } else if (family == "logistic") {
    out = LogisticSupply{r.number("midpoint"), r.number("steepness")};
  } else {
    Reader::fail(r.field("family"), "must be \"linear\" or \"logistic\", got \"" + family + "\"");
  }
  r.finish();
  return out;
}

ABMConfig read_abm(Reader r) {
  ABMConfig c;
  c.price_step = r.number_or("price_step", c.price_step);
  c.moving_cost = r.number_or("moving_cost", c.moving_cost);
  c.loss_aversion = r.number_or("loss_aversion", c.loss_aversion);
  c.mixing_correlation = r.number_or("mixing_correlation", c.mixing_correlation);
  c.regulated_fraction = r.number_or("regulated_fraction", c.regulated_fraction);
  c.max_rounds = static_cast<int>(r.integer_or("max_rounds", c.max_rounds));
  c.convergence_tol = r.number_or("convergence_tol", c.convergence_tol);
  c.convergence_window = static_cast<int>(r.integer_or("convergence_window", c.convergence_window));
  if (r.optional("seed")) c.seed = r.unsigned_integer("seed");
  if (r.optional("initial_price")) c.initial_price = r.number("initial_price");
  c.rent_adjustment = r.number_or("rent_adjustment", c.rent_adjustment);
  c.switch_sensitivity = r.number_or("switch_sensitivity", c.switch_sensitivity);
  c.exploration_floor = r.number_or("exploration_floor", c.exploration_floor);
  r.finish();
  return c;
}

SweepSpec read_sweep(Reader r) {
  SweepSpec s;
  s.parameter = r.string("parameter");
  const json& values = r.raw("values");
  if (!values.is_array()) Reader::fail(r.field("values"), "must be an array of numbers");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number()) Reader::fail(r.field("values") + "[" + std::to_string(i) + "]", "must be a number");
    s.values.push_back(values[i].get<double>());
  }
  r.finish();
  return s;
}

std::string describe_position(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <class Fn>
auto with_context(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const UnsupportedConfiguration& e) {
    throw UnsupportedConfiguration(context + e.what());
  } catch (const BracketError& e) {
    throw BracketError(context + e.what());
  } catch (const NumericError& e) {
    throw NumericError(context + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + e.what());
  } catch (const ScenarioError& e) {
    throw ScenarioError(context + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  }
}

void validate_model(const Scenario& s) {
  try {
    validate(s.market);
    validate(s.demand);
    validate(s.supply);
    if (!(s.solver.tolerance > 0.0)) throw ConfigError("solver.tolerance must be > 0");
    if (!(s.solver.price_cap > 0.0)) throw ConfigError("solver.price_cap must be > 0");
    if (s.abm) validate(*s.abm);
  } catch (const ScenarioError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ScenarioError(e.what());
  }
}

}  // namespace

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> paths = {
      "market.num_buildings", "market.tenants_per_building", "market.base_utility", "market.externality_cost",
      "demand.intercept",     "demand.slope",                "demand.scale",        "demand.elasticity",
      "supply.p_min",         "supply.p_max",                "supply.midpoint",     "supply.steepness",
  };
  return paths;
}

Scenario with_parameter(Scenario s, std::string_view path, double value) {
  auto integral = [&](const char* name) {
    if (!std::isfinite(value) || std::floor(value) != value || std::abs(value) > std::numeric_limits<int>::max()) {
      throw ScenarioError(std::string(name) + " must be an integer, got " + std::to_string(value));
    }
    return static_cast<int>(value);
  };
  auto missing = [&]() -> void {
    throw ScenarioError("sweep.parameter \"" + std::string(path) + "\" does not exist for this scenario's curve families");
  };

  if (path == "market.num_buildings") {
    s.market.num_buildings = integral("market.num_buildings");
  } else if (path == "market.tenants_per_building") {
    s.market.tenants_per_building = integral("market.tenants_per_building");
  } else if (path == "market.base_utility") {
    s.market.base_utility = value;
  } else if (path == "market.externality_cost") {
    s.market.externality_cost = value;
  } else if (path == "demand.intercept" || path == "demand.slope") {
    auto* d = std::get_if<LinearDemand>(&s.demand);
    if (!d) missing();
    (path == "demand.intercept" ? d->intercept : d->slope) = value;
  } else if (path == "demand.scale" || path == "demand.elasticity") {
    auto* d = std::get_if<ConstantElasticityDemand>(&s.demand);
    if (!d) missing();
    (path == "demand.scale" ? d->scale : d->elasticity) = value;
  } else if (path == "supply.p_min" || path == "supply.p_max") {
    auto* f = std::get_if<LinearSupply>(&s.supply);
    if (!f) missing();
    (path == "supply.p_min" ? f->p_min : f->p_max) = value;
  } else if (path == "supply.midpoint" || path == "supply.steepness") {
    auto* f = std::get_if<LogisticSupply>(&s.supply);
    if (!f) missing();
    (path == "supply.midpoint" ? f->midpoint : f->steepness) = value;
  } else {
    throw ScenarioError("sweep.parameter \"" + std::string(path) + "\" is not a sweepable parameter");
  }
  return s;
}

void validate(const Scenario& s) {
  if (s.schema_version != kScenarioSchemaVersion) {
    throw ScenarioError("schema_version " + std::to_string(s.schema_version) + " is not supported (expected " +
                        std::to_string(kScenarioSchemaVersion) + ")");
  }
  validate_model(s);
  if (s.sweep) {
    if (s.sweep->values.empty()) throw ScenarioError("sweep.values must not be empty");
    for (std::size_t i = 0; i < s.sweep->values.size(); ++i) {
      const std::string context = "sweep.values[" + std::to_string(i) + "]: ";
      with_context(context, [&] {
        validate_model(with_parameter(s, s.sweep->parameter, s.sweep->values[i]));
        return 0;
      });
    }
  }
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string(source) + ": parse error at " + describe_position(text, e.byte == 0 ? 0 : e.byte - 1) +
                        ": " + e.what());
  }

  try {
    Scenario s;
    Reader top(root, "");
    s.schema_version = static_cast<int>(top.integer_or("schema_version", kScenarioSchemaVersion));
    s.name = top.string_or("name", s.name);

    Reader market = top.child("market");
    s.market.num_buildings = static_cast<int>(market.integer("num_buildings"));
    s.market.tenants_per_building = static_cast<int>(market.integer("tenants_per_building"));
    s.market.base_utility = market.number_or("base_utility", 0.0);
    s.market.externality_cost = market.number("externality_cost");
    market.finish();

    s.demand = read_demand(top.child("demand"));
    s.supply = read_supply(top.child("supply"));

    if (top.optional("solver")) {
      Reader solver = top.child("solver");
      s.solver.tolerance = solver.number_or("tolerance", s.solver.tolerance);
      s.solver.price_cap = solver.number_or("price_cap", s.solver.price_cap);
      solver.finish();
    }
    if (top.optional("abm")) s.abm = read_abm(top.child("abm"));
    if (top.optional("sweep")) s.sweep = read_sweep(top.child("sweep"));
    top.finish();

    validate(s);
    return s;
  } catch (const ScenarioError& e) {
    throw ScenarioError(std::string(source) + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

std::string to_json_string(const Scenario& s) {
  ordered_json root;
  root["schema_version"] = s.schema_version;
  root["name"] = s.name;
  root["market"] = {
      {"num_buildings", s.market.num_buildings},
      {"tenants_per_building", s.market.tenants_per_building},
      {"base_utility", s.market.base_utility},
      {"externality_cost", s.market.externality_cost},
  };
  if (const auto* d = std::get_if<LinearDemand>(&s.demand)) {
    root["demand"] = {{"family", "linear"}, {"intercept", d->intercept}, {"slope", d->slope}};
  } else {
    const auto& ce = std::get<ConstantElasticityDemand>(s.demand);
    root["demand"] = {{"family", "constant_elasticity"}, {"scale", ce.scale}, {"elasticity", ce.elasticity}};
  }
  if (const auto* f = std::get_if<LinearSupply>(&s.supply)) {
    root["supply"] = {{"family", "linear"}, {"p_min", f->p_min}, {"p_max", f->p_max}};
  } else {
    const auto& lg = std::get<LogisticSupply>(s.supply);
    root["supply"] = {{"family", "logistic"}, {"midpoint", lg.midpoint}, {"steepness", lg.steepness}};
  }
  root["solver"] = {{"tolerance", s.solver.tolerance}, {"price_cap", s.solver.price_cap}};
  if (s.abm) {
    const ABMConfig& c = *s.abm;
    ordered_json abm = {
        {"price_step", c.price_step},
        {"moving_cost", c.moving_cost},
        {"loss_aversion", c.loss_aversion},
        {"mixing_correlation", c.mixing_correlation},
        {"regulated_fraction", c.regulated_fraction},
        {"max_rounds", c.max_rounds},
        {"convergence_tol", c.convergence_tol},
        {"convergence_window", c.convergence_window},
        {"seed", c.seed},
    };
    abm["initial_price"] = c.initial_price ? ordered_json(*c.initial_price) : ordered_json(nullptr);
    abm["rent_adjustment"] = c.rent_adjustment;
    abm["switch_sensitivity"] = c.switch_sensitivity;
    abm["exploration_floor"] = c.exploration_floor;
    root["abm"] = abm;
  }
  if (s.sweep) {
    root["sweep"] = {{"parameter", s.sweep->parameter}, {"values", s.sweep->values}};
  }
  return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path.string() + ": cannot open for writing");
  out << to_json_string(scenario);
}

ScenarioRun run_scenario(const Scenario& s) {
  const std::string context = "scenario '" + s.name + "': ";
  return with_context(context, [&] {
    ScenarioRun run;
    run.comparison = compare_regimes(s.market, s.demand, s.supply, s.solver);
    run.free_listing = run.comparison.free_listing;
    run.sorting = run.comparison.sorting;
    run.planner = solve_planner_optimum(s.market, s.demand, s.solver);
    run.free_price_verdict = is_listing_efficient(run.free_listing.price, s.market);
    if (s.abm) {
      run.abm = run_to_convergence(init_state(s.market, s.demand, s.supply, *s.abm), s.market, s.demand, *s.abm);
    }
    return run;
  });
}

SweepTable run_sweep(const Scenario& s, int jobs) {
  if (!s.sweep) throw ScenarioError("scenario '" + s.name + "' has no sweep block");
  const SweepSpec& sweep = *s.sweep;
  SweepTable rows(sweep.values.size());
  detail::parallel_for_index(rows.size(), jobs, [&](std::size_t i) {
    const double value = sweep.values[i];
    const Scenario point = with_parameter(s, sweep.parameter, value);
    const std::string context = "scenario '" + s.name + "', " + sweep.parameter + " = " + std::to_string(value) + ": ";
    rows[i] = with_context(context, [&] {
      const RegimeComparison cmp = compare_regimes(point.market, point.demand, point.supply, point.solver);
      SweepRow row;
      row.value = value;
      row.theta_star = cmp.sorting.theta_star;
      row.p_sorting = cmp.sorting.price;
      row.p_free = cmp.free_listing.price;
      row.L_free = cmp.free_listing.listings;
      row.welfare_free = cmp.welfare_free;
      row.welfare_sorting = cmp.welfare_sorting;
      row.deadweight_loss = cmp.deadweight_loss;
      row.corner = cmp.sorting.corner;
      return row;
    });
  });
  return rows;
}

std::vector<UtilityPoint> emit_utility_curves(const Scenario& s, int grid_size) {
  if (grid_size < 2) throw ConfigError("grid size must be >= 2, got " + std::to_string(grid_size));
  const double capacity = s.market.total_tenants();
  const double social_cost = s.market.social_cost_per_listing();
  const double u0 = s.market.base_utility;
  std::vector<UtilityPoint> points(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double theta = static_cast<double>(i) / (grid_size - 1);
    points[i] = {theta, u0 + inverse_demand(s.demand, theta * capacity) - social_cost, u0};
  }
  return points;
}

}  // namespace hostmarket

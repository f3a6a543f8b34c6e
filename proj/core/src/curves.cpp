#include "hostmarket/curves.hpp"

#include "hostmarket/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hostmarket {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonnegative(double x, const char* what) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError(std::string(what) + " must be >= 0, got " + std::to_string(x));
  }
}

}  // namespace

void validate(const DemandCurve& curve) {
  std::visit(overloaded{
                 [](const LinearDemand& d) {
                   if (!std::isfinite(d.intercept)) throw ConfigError("demand.intercept must be finite");
                   if (!(d.slope > 0.0) || !std::isfinite(d.slope))
                     throw ConfigError("demand.slope must be > 0");
                 },
                 [](const ConstantElasticityDemand& d) {
                   if (!(d.scale > 0.0) || !std::isfinite(d.scale))
                     throw ConfigError("demand.scale must be > 0");
                   if (!(d.elasticity < 0.0) || !std::isfinite(d.elasticity))
                     throw ConfigError("demand.elasticity must be < 0");
                 },
             },
             curve);
}

void validate(const SupplyPropensity& f) {
  std::visit(overloaded{
                 [](const LinearSupply& s) {
                   if (!std::isfinite(s.p_min) || !std::isfinite(s.p_max))
                     throw ConfigError("supply.p_min and supply.p_max must be finite");
                   if (!(s.p_min < s.p_max)) throw ConfigError("supply.p_min must be < supply.p_max");
                 },
                 [](const LogisticSupply& s) {
                   if (!std::isfinite(s.midpoint)) throw ConfigError("supply.midpoint must be finite");
                   if (!(s.steepness > 0.0) || !std::isfinite(s.steepness))
                     throw ConfigError("supply.steepness must be > 0");
                 },
             },
             f);
}

double demand_quantity(const DemandCurve& curve, double p) {
  require_nonnegative(p, "price");
  return std::visit(overloaded{
                        [p](const LinearDemand& d) { return std::max(0.0, (d.intercept - p) / d.slope); },
                        [p](const ConstantElasticityDemand& d) {
                          if (p == 0.0) return std::numeric_limits<double>::infinity();
                          return d.scale * std::pow(p, d.elasticity);
                        },
                    },
                    curve);
}

double inverse_demand(const DemandCurve& curve, double q) {
  require_nonnegative(q, "quantity");
  return std::visit(overloaded{
                        [q](const LinearDemand& d) { return std::max(0.0, d.intercept - d.slope * q); },
                        [q](const ConstantElasticityDemand& d) {
                          if (q == 0.0) return std::numeric_limits<double>::infinity();
                          return std::pow(q / d.scale, 1.0 / d.elasticity);
                        },
                    },
                    curve);
}

double supply_fraction(const SupplyPropensity& f, double p) {
  require_nonnegative(p, "price");
  return std::visit(overloaded{
                        [p](const LinearSupply& s) {
                          return std::clamp((p - s.p_min) / (s.p_max - s.p_min), 0.0, 1.0);
                        },
                        [p](const LogisticSupply& s) {
                          return 1.0 / (1.0 + std::exp(-s.steepness * (p - s.midpoint)));
                        },
                    },
                    f);
}

double reservation_quantile(const SupplyPropensity& f, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile must lie in (0, 1), got " + std::to_string(u));
  }
  const double r = std::visit(overloaded{
                                  [u](const LinearSupply& s) { return s.p_min + u * (s.p_max - s.p_min); },
                                  [u](const LogisticSupply& s) {
                                    return s.midpoint + std::log(u / (1.0 - u)) / s.steepness;
                                  },
                              },
                              f);
  return std::max(0.0, r);
}

bool has_finite_gross_benefit(const DemandCurve& curve) {
  if (const auto* ce = std::get_if<ConstantElasticityDemand>(&curve)) {
    return ce->elasticity < -1.0;
  }
  return true;
}

double gross_benefit(const DemandCurve& curve, double listings) {
  require_nonnegative(listings, "listings");
  return std::visit(
      overloaded{
          [listings](const LinearDemand& d) {
            if (d.intercept <= 0.0) return 0.0;
            // Past the choke quantity the truncated curve adds no area.
            const double q = std::min(listings, d.intercept / d.slope);
            return d.intercept * q - 0.5 * d.slope * q * q;
          },
          [listings](const ConstantElasticityDemand& d) {
            if (!(d.elasticity < -1.0)) {
              throw UnsupportedConfiguration(
                  "gross benefit diverges for constant-elasticity demand with elasticity in [-1, 0) "
                  "(got " + std::to_string(d.elasticity) + "); use elasticity < -1 or linear demand");
            }
            if (listings == 0.0) return 0.0;
            const double inv = 1.0 / d.elasticity;
            return std::pow(d.scale, -inv) * std::pow(listings, 1.0 + inv) / (1.0 + inv);
          },
      },
      curve);
}

double choke_price(const DemandCurve& curve) { return inverse_demand(curve, 0.0); }

}  // namespace hostmarket

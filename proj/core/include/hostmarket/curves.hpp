#pragma once

#include <variant>

namespace hostmarket {

/// Linear demand truncated at zero: D(p) = max(0, (a - p) / b).
struct LinearDemand {
  double intercept;  // choke price a
  double slope;      // b > 0, price drop per additional listing

  bool operator==(const LinearDemand&) const = default;
};

/// Constant-elasticity demand: D(p) = k * p^eps with eps < 0.
struct ConstantElasticityDemand {
  double scale;       // k > 0, listings demanded at unit price
  double elasticity;  // eps < 0

  bool operator==(const ConstantElasticityDemand&) const = default;
};

using DemandCurve = std::variant<LinearDemand, ConstantElasticityDemand>;

/// Share of tenants willing to host, clamped linear ramp between p_min and p_max.
struct LinearSupply {
  double p_min;
  double p_max;

  bool operator==(const LinearSupply&) const = default;
};

/// Logistic share of willing hosts: 1 / (1 + exp(-s (p - m))).
struct LogisticSupply {
  double midpoint;
  double steepness;

  bool operator==(const LogisticSupply&) const = default;
};

using SupplyPropensity = std::variant<LinearSupply, LogisticSupply>;

// Throws ConfigError when the curve parameters violate their constraints.
void validate(const DemandCurve& curve);
void validate(const SupplyPropensity& f);

/// Listings demanded at price p. Throws DomainError for p < 0.
double demand_quantity(const DemandCurve& curve, double p);

/// Market-clearing price for q listings. For constant elasticity the
/// choke price is unbounded and q == 0 returns +infinity.
double inverse_demand(const DemandCurve& curve, double q);

/// Fraction of tenants willing to host at price p, in [0, 1].
double supply_fraction(const SupplyPropensity& f, double p);

/// Lowest price at which a share u in (0, 1) of tenants is willing to host.
/// Clamped at zero when f(0) already exceeds u.
double reservation_quantile(const SupplyPropensity& f, double u);

/// Area under the inverse demand curve between 0 and `listings`, in closed form.
///
/// For constant elasticity the integral only converges when eps < -1;
/// otherwise UnsupportedConfiguration is thrown.
double gross_benefit(const DemandCurve& curve, double listings);

/// Whether gross_benefit is finite for this curve.
bool has_finite_gross_benefit(const DemandCurve& curve);

/// Choke price P(0); +infinity for constant elasticity.
double choke_price(const DemandCurve& curve);

}  // namespace hostmarket

#pragma once

#include <functional>

namespace hostmarket {

struct RootOptions {
  double tolerance = 1e-10;
  int max_iterations = 400;
};

/// Bisection on [lo, hi]. Requires g(lo) * g(hi) <= 0.
///
/// Returns x with |g(x)| <= tol or a final bracket no wider than tol, and the
/// sequence of evaluations depends only on the inputs. Throws BracketError
/// without a sign change and NumericError if g returns a non-finite value.
double bracketed_root(const std::function<double(double)>& g, double lo, double hi,
                      double tol = 1e-10);

/// Golden-section search for the maximizer of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than tol. On plateaus the search
/// drifts toward hi, so ties resolve to the largest maximizer.
double golden_section_maximize(const std::function<double(double)>& objective, double lo,
                               double hi, double tol = 1e-10);

}  // namespace hostmarket

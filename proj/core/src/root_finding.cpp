#include "hostmarket/root_finding.hpp"

#include "hostmarket/errors.hpp"

#include <cmath>
#include <string>

namespace hostmarket {
namespace {

double checked(const std::function<double(double)>& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw NumericError("non-finite function value " + std::to_string(v) + " at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

double bracketed_root(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw BracketError("tolerance must be > 0");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw NumericError("bracket endpoints must be finite");
  if (lo > hi) std::swap(lo, hi);

  double g_lo = checked(g, lo);
  const double g_hi = checked(g, hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if (std::signbit(g_lo) == std::signbit(g_hi)) {
    throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "]: g(lo) = " + std::to_string(g_lo) + ", g(hi) = " + std::to_string(g_hi));
  }

  for (int i = 0; i < 2000 && hi - lo > tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in floating point
    const double g_mid = checked(g, mid);
    if (g_mid == 0.0) return mid;
    if (std::signbit(g_mid) == std::signbit(g_lo)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

double golden_section_maximize(const std::function<double(double)>& objective, double lo, double hi,
                               double tol) {
  if (lo > hi) std::swap(lo, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);

  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = objective(d);
    }
  }

  // The interior probes never touch the endpoints; a corner maximizer is
  // recovered by comparing against them directly. Ties go to the larger x.
  double best = 0.5 * (lo + hi);
  double f_best = objective(best);
  for (double x : {lo, hi}) {
    const double fx = objective(x);
    if (fx >= f_best) {
      best = x;
      f_best = fx;
    }
  }
  return best;
}

}  // namespace hostmarket

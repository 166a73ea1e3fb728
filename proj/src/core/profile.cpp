#include "petty/core/profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "petty/core/error.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/roots.hpp"

namespace petty {

double spherical_f2(int n, double s) {
  if (s <= 0.0) return 0.0;
  return integrate_adaptive([n](double r) { return std::pow(std::sin(r), n - 1); }, 0.0, s, 1e-12);
}

double hyperbolic_f2(int n, double s) {
  if (s <= 0.0) return 0.0;
  return integrate_adaptive(
      [n](double r) { return std::pow(r, n - 1) / std::sqrt(1.0 + r * r); }, 0.0, s, 1e-12);
}

MonotoneProfile spherical_profile(int n) {
  MonotoneProfile p;
  p.fn = [n](double t) { return spherical_f2(n, 0.5 * std::numbers::pi - std::atan(t)); };
  p.domain_lo = 0.0;
  p.domain_hi = std::numeric_limits<double>::infinity();
  p.direction = Monotonicity::decreasing;
  p.convex = true;
  return p;
}

MonotoneProfile hyperbolic_profile(int n) {
  MonotoneProfile p;
  p.fn = [n](double t) {
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    return hyperbolic_f2(n, 1.0 / t);
  };
  p.domain_lo = 0.0;
  p.domain_hi = std::numeric_limits<double>::infinity();
  p.direction = Monotonicity::decreasing;
  p.convex = true;
  return p;
}

double profile_inverse(const MonotoneProfile& profile, double y) {
  if (!std::isfinite(y)) throw Error(Errc::out_of_range, "profile_inverse: non-finite target");
  const bool decreasing = profile.direction == Monotonicity::decreasing;

  // Open endpoints are approached geometrically until the target is bracketed.
  double lo = profile.domain_lo;
  double hi = std::isfinite(profile.domain_hi) ? profile.domain_hi : std::max(1.0, 2.0 * lo);
  auto value = [&](double t) { return profile(t); };
  double flo;
  if (std::isfinite(value(lo))) {
    flo = value(lo);
  } else {
    lo = hi > 0.0 ? hi * 1e-3 : 1e-3;
    flo = value(lo);
    for (int k = 0; k < 60 && (decreasing ? flo < y : flo > y); ++k) {
      lo *= 1e-1;
      flo = value(lo);
    }
  }
  double fhi = value(hi);
  if (!std::isfinite(profile.domain_hi)) {
    for (int k = 0; k < 200 && (decreasing ? fhi > y : fhi < y); ++k) {
      hi *= 2.0;
      fhi = value(hi);
    }
  }
  const double range_lo = std::min(flo, fhi);
  const double range_hi = std::max(flo, fhi);
  const double slack = 1e-14 * std::max(1.0, std::abs(y));
  if (y < range_lo - slack || y > range_hi + slack)
    throw Error(Errc::out_of_range, "profile_inverse: target outside the profile range");
  if (y <= range_lo) return decreasing ? hi : lo;
  if (y >= range_hi) return decreasing ? lo : hi;

  const double tol = 1e-13 * std::max(1.0, hi);
  return bisect([&](double t) { return value(t) - y; }, lo, hi, tol);
}

}  // namespace petty

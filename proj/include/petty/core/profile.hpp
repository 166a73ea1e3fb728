#pragma once

#include <functional>
#include <limits>

namespace petty {

enum class Monotonicity { increasing, decreasing };

// Scalar function with a declared domain, direction of monotonicity and
// convexity flag. F_1, F_2 and F = F_2 o F_1 of both isoperimetric chains are
// expressed this way.
struct MonotoneProfile {
  std::function<double(double)> fn;
  double domain_lo = 0.0;
  double domain_hi = std::numeric_limits<double>::infinity();
  Monotonicity direction = Monotonicity::decreasing;
  bool convex = true;

  double operator()(double t) const { return fn(t); }
};

// F_2(s) = int_0^s sin^{n-1}(r) dr.
double spherical_f2(int n, double s);
// F_2(s) = int_0^s r^{n-1} (1 + r^2)^{-1/2} dr.
double hyperbolic_f2(int n, double s);

// F(t) = F_2(pi/2 - arctan t), t >= 0.
MonotoneProfile spherical_profile(int n);
// F(t) = F_2(1 / t), t > 0.
MonotoneProfile hyperbolic_profile(int n);

// x with F(x) = y to 1e-10 by bisection. Throws Error(out_of_range) when y is
// outside the range of F over its domain.
double profile_inverse(const MonotoneProfile& profile, double y);

}  // namespace petty

#pragma once

#include <cmath>
#include <string>

#include "petty/core/error.hpp"

namespace petty {

// Bisection on a continuous f with f(lo) f(hi) <= 0. Returns the midpoint of
// the final bracket, whose width is <= tol.
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw Error(Errc::non_finite, "bisect: non-finite endpoint value");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw Error(Errc::no_sign_change, "bisect: f(lo) and f(hi) have the same sign");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Bisection on a predicate that is true on [lo, t*) and false on (t*, hi].
// Returns an estimate of t* within tol.
template <class P>
double bisect_predicate(P&& inside, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Illinois-modified regula falsi on a sign-changing bracket; falls back to a
// bisection step whenever the secant stalls. Used for crossing refinement and
// node-radius solves, not for r_K or F^{-1}.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double flo, double fhi, double tol,
                       int max_iter = 100) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  int side = 0;
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi) || (it % 6 == 5)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section search for a maximum of f on [lo, hi]; returns the argmax.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace petty

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace petty {

// omega_n = pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on P_n, Golub-Welsch free).
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int points);

// Fixed Gauss-Legendre rule mapped onto [a, b].
template <class F>
double integrate_gauss(F&& f, double a, double b, int points) {
  const GaussRule& rule = gauss_legendre(points);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.x.size(); ++k) acc += rule.w[k] * f(mid + half * rule.x[k]);
  return half * acc;
}

// Adaptive Gauss-Legendre: a panel is accepted once the 10-point value and
// the sum over its two halves agree within the panel's share of abs_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12);

}  // namespace petty

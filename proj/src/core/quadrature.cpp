#include "petty/core/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "petty/core/error.hpp"

namespace petty {

double unit_ball_volume(int n) {
  if (n < 1) throw Error(Errc::out_of_range, "unit_ball_volume: n must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

GaussRule build_rule(int points) {
  GaussRule rule;
  rule.x.resize(points);
  rule.w.resize(points);
  for (int i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.x[points - 1 - i] = x;
    rule.w[i] = w;
    rule.w[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.x[points / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
  return it->second;
}

namespace {

double adaptive_panel(const std::function<double(double)>& f, double a, double b, double whole,
                      double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_gauss(f, a, mid, 10);
  const double right = integrate_gauss(f, mid, b, 10);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= tol) return refined;
  return adaptive_panel(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_panel(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (a == b) return 0.0;
  const double whole = integrate_gauss(f, a, b, 10);
  const double value = adaptive_panel(f, a, b, whole, abs_tol, 40);
  if (!std::isfinite(value)) throw Error(Errc::non_finite, "integrate_adaptive: non-finite result");
  return value;
}

}  // namespace petty

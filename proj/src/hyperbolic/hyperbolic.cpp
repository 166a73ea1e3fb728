#include "petty/hyperbolic/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <spdlog/spdlog.h>

#include "petty/core/error.hpp"
#include "petty/core/profile.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/roots.hpp"
#include "petty/starbody/body_spec.hpp"
#include "petty/starbody/normals.hpp"
#include "petty/starbody/projection.hpp"
#include "petty/starbody/steiner.hpp"
#include "petty/starbody/verify_loop.hpp"

namespace petty {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double chart_density(int n, double r) { return std::pow(r, n - 1) / std::sqrt(1.0 + r * r); }

// int_0^rho r^{n-1} (1 + r^2)^{-1/2} dr
double radial_mass(int n, double rho) {
  return integrate_adaptive([n](double r) { return chart_density(n, r); }, 0.0, rho, 1e-14);
}

double measure_of_radii(const SphereGrid& grid, std::span<const double> rho, double scale, Exec exec) {
  std::vector<double> mass(grid.size());
  for_each_index(exec, grid.size(),
                 [&](std::size_t i) { mass[i] = radial_mass(grid.dim(), scale * rho[i]); });
  return integrate_samples(grid, mass);
}

StarBody disk_of_chart(const StarBody& chart) {
  std::vector<double> rho(chart.grid().size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = phi_inverse_radius(chart.radius(i));
  return StarBody(chart.grid_ptr(), std::move(rho));
}

}  // namespace

Vec phi(const Vec& x) {
  const double s = dot(x, x);
  if (!(s < 1.0)) throw Error(Errc::outside_domain, "phi: point is not inside the unit ball");
  return x * (2.0 / (1.0 - s));
}

Vec phi_inverse(const Vec& y) { return y / (1.0 + std::sqrt(1.0 + dot(y, y))); }

double phi_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(Errc::outside_domain, "phi: radius must lie in [0, 1)");
  return 2.0 * r / (1.0 - r * r);
}

double phi_inverse_radius(double c) { return c / (1.0 + std::sqrt(1.0 + c * c)); }

double mu_measure(const StarBody& chart, Exec exec) {
  return measure_of_radii(chart.grid(), chart.radii(), 1.0, exec);
}

double mu_measure_disk(const StarBody& disk, Exec exec) {
  const SphereGrid& grid = disk.grid();
  const int n = grid.dim();
  std::vector<double> mass(grid.size());
  for_each_index(exec, grid.size(), [&](std::size_t i) {
    auto f = [n](double r) { return std::pow(r, n - 1) * std::pow(1.0 - r * r, -n); };
    mass[i] = std::pow(2.0, n) * integrate_adaptive(f, 0.0, disk.radius(i), 1e-14);
  });
  return integrate_samples(grid, mass);
}

double ball_measure_chart(int n, double c) {
  const double s = std::sqrt(1.0 + c * c);
  if (n == 2) return two_pi * (s - 1.0);
  if (n == 3) return two_pi * (c * s - std::asinh(c));
  throw Error(Errc::unsupported_dimension, "ball_measure_chart: n must be 2 or 3");
}

HyperbolicBody::HyperbolicBody(StarBody chart, StarBody disk, double delta_disk)
    : chart_(std::move(chart)), disk_(std::move(disk)), delta_disk_(delta_disk) {
  if (!(delta_disk > 0.0 && delta_disk < 1.0)) throw Error(Errc::out_of_range, "delta_disk must lie in (0, 1)");
  if (disk_.max_radius() > 1.0 - delta_disk)
    throw Error(Errc::body_too_large, "hyperbolic body reaches the disk margin (max Poincare radius " +
                                          std::to_string(disk_.max_radius()) + ")");
  measure_ = mu_measure(chart_);
}

HyperbolicBody HyperbolicBody::from_chart(StarBody chart, double delta_disk) {
  StarBody disk = disk_of_chart(chart);
  return HyperbolicBody(std::move(chart), std::move(disk), delta_disk);
}

HyperbolicBody HyperbolicBody::from_disk(const StarBody& disk, double delta_disk) {
  if (disk.max_radius() > 1.0 - delta_disk)
    throw Error(Errc::body_too_large, "hyperbolic body reaches the disk margin");
  std::vector<double> rho(disk.grid().size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = phi_radius(disk.radius(i));
  return HyperbolicBody(StarBody(disk.grid_ptr(), std::move(rho)), disk, delta_disk);
}

HyperbolicBody HyperbolicBody::ball(const GridPtr& grid, double disk_radius, double delta_disk) {
  return from_disk(centered_ball(grid, disk_radius), delta_disk);
}

HyperbolicBody HyperbolicBody::from_spec(const BodySpec& spec, const GridPtr& grid) {
  if (spec.chart == "poincare") return from_disk(build_body(spec, grid), spec.delta_disk);
  if (spec.chart == "phi" || spec.chart == "euclidean") return from_chart(build_body(spec, grid), spec.delta_disk);
  throw Error(Errc::invalid_body, "hyperbolic body needs chart = poincare or phi");
}

HyperbolicBody hyperbolic_polar(const HyperbolicBody& body, Exec exec) {
  return HyperbolicBody::from_chart(polar(body.chart(), exec), body.delta_disk());
}

HyperbolicSteinerResult hyperbolic_steiner(const HyperbolicBody& body, const Vec& u, Exec exec) {
  const SphereGrid& grid = body.chart().grid();
  const int n = grid.dim();
  const double target = body.measure();
  const StarBody sym = steiner(body.chart(), u, exec);
  const std::span<const double> rho = sym.radii();
  auto residual = [&](double r) { return measure_of_radii(grid, rho, r, exec) - target; };
  auto slope = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weight(i) * rho[i] * chart_density(n, r * rho[i]);
    return acc;
  };
  auto finish = [&](double r, bool clamped) {
    std::vector<double> scaled(rho.begin(), rho.end());
    for (double& v : scaled) v *= r;
    return HyperbolicSteinerResult{HyperbolicBody::from_chart(StarBody(sym.grid_ptr(), std::move(scaled)),
                                                              body.delta_disk()),
                                   r, clamped};
  };

  const double tol = 1e-13 * target;
  double f_hi = residual(1.0);
  if (std::abs(f_hi) <= tol) return finish(1.0, false);
  if (f_hi < 0.0) {
    if (residual(1.0 + steiner_clamp) < 0.0)
      throw Error(Errc::bracket_failure, "hyperbolic_steiner: measure deficit at r = 1 + eps_clamp");
    spdlog::warn("hyperbolic_steiner: r_K in (1, 1 + {}] clamped to 1 (deficit {:.3e})", steiner_clamp, -f_hi);
    return finish(1.0, true);
  }
  // Newton on the bracket [1e-6, 1]; mu(r S) is increasing with the exact
  // derivative `slope`, and any step leaving the bracket is replaced by
  // bisection.
  double lo = 1e-6, hi = 1.0;
  double r = 1.0, f = f_hi;
  for (int it = 0; it < 200; ++it) {
    double next = r - f / slope(r);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
    f = residual(r);
    if (std::abs(f) <= tol || hi - lo <= 1e-15) return finish(r, false);
    (f > 0.0 ? hi : lo) = r;
  }
  throw Error(Errc::bracket_failure, "hyperbolic_steiner: r_K did not converge");
}

SupportProfile hyperbolic_projection_support(const HyperbolicBody& body, Exec exec) {
  return projection_body(body.chart(), exec);
}

HyperbolicBody hyperbolic_projection_body(const HyperbolicBody& body, Exec exec) {
  return HyperbolicBody::from_chart(body_from_support(hyperbolic_projection_support(body, exec), exec),
                                    body.delta_disk());
}

double polar_projection_measure(const SupportProfile& h, Exec exec) {
  const SphereGrid& grid = h.grid();
  std::vector<double> mass(grid.size());
  for_each_index(exec, grid.size(), [&](std::size_t i) { mass[i] = radial_mass(grid.dim(), 1.0 / h.value(i)); });
  return integrate_samples(grid, mass);
}

double polar_projection_measure(const HyperbolicBody& body, Exec exec) {
  return polar_projection_measure(hyperbolic_projection_support(body, exec), exec);
}

double ball_chart_radius_for_measure(int n, double measure) {
  if (!(measure > 0.0)) throw Error(Errc::out_of_range, "ball_rearrangement: measure must be positive");
  double hi = 1.0;
  while (ball_measure_chart(n, hi) < measure) hi *= 2.0;
  return bisect([&](double c) { return ball_measure_chart(n, c) - measure; }, 0.0, hi, 1e-15 * hi);
}

HyperbolicBody ball_rearrangement(const HyperbolicBody& body) {
  const double c = ball_chart_radius_for_measure(body.dim(), body.measure());
  return HyperbolicBody::from_chart(centered_ball(body.chart().grid_ptr(), c), body.delta_disk());
}

ChartMetric::Point PoincareMetric::embed(const Vec& y) const {
  const Vec x = phi_inverse(y);
  return {x.x, x.y, x.z, dot(x, x)};
}

double PoincareMetric::distance(const Point& a, const Point& b) const {
  const double d2 = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]);
  // cosh d = 1 + 2 delta, written as 2 asinh(sqrt delta) to keep short
  // distances resolvable.
  return 2.0 * std::asinh(std::sqrt(d2 / ((1.0 - a[3]) * (1.0 - b[3]))));
}

double hyperbolic_hausdorff(const HyperbolicBody& a, const HyperbolicBody& b, Exec exec) {
  return hausdorff_distance(a.chart(), b.chart(), PoincareMetric{}, exec);
}

namespace {

// Chain with the polar projection measures of K* and K already known.
ChainReport hyperbolic_chain_from(const HyperbolicBody& body, const HyperbolicBody& star, double polar_star,
                                  double polar_body, double eps, double equality_band) {
  const int n = body.dim();
  const double c0 = unit_ball_volume(n - 1) / (n * unit_ball_volume(n));
  const double sphere_area = n * unit_ball_volume(n);
  const MonotoneProfile f = hyperbolic_profile(n);
  return detail::chain_from_values(c0 * perimeter(star.chart()), profile_inverse(f, polar_star / sphere_area),
                                   profile_inverse(f, polar_body / sphere_area), c0 * perimeter(body.chart()), eps,
                                   equality_band);
}

}  // namespace

ChainReport hyperbolic_chain(const HyperbolicBody& body, double eps, double equality_band) {
  const HyperbolicBody star = ball_rearrangement(body);
  return hyperbolic_chain_from(body, star, polar_projection_measure(star), polar_projection_measure(body), eps,
                               equality_band);
}

PettyReport verify_hyperbolic_petty(const HyperbolicBody& body, const std::vector<Vec>& schedule,
                                    const VerifyOptions& options) {
  const HyperbolicBody star = ball_rearrangement(body);
  PettyReport rep = detail::run_petty(
      body, star, schedule, options,
      [](const HyperbolicBody& k, const Vec& u) { return hyperbolic_steiner(k, u); },
      [](const HyperbolicBody& k) { return k.measure(); },
      [](const HyperbolicBody& k) { return polar_projection_measure(k); },
      [](const HyperbolicBody& a, const HyperbolicBody& b) { return hyperbolic_hausdorff(a, b); });
  rep.geometry = "hyperbolic";
  rep.chain = hyperbolic_chain_from(body, star, rep.rhs, rep.lhs, options.eps_quad, options.equality_band);
  return rep;
}

}  // namespace petty

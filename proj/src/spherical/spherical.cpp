#include "petty/spherical/spherical.hpp"

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

constexpr double half_pi = std::numbers::pi / 2.0;

double pole_limit(double delta) { return std::tan(half_pi - delta); }

// int_0^rho r^{n-1} (1 + r^2)^{-(n+1)/2} dr
double radial_mass(int n, double rho) {
  auto f = [n](double r) { return std::pow(r, n - 1) * std::pow(1.0 + r * r, -0.5 * (n + 1)); };
  return integrate_adaptive(f, 0.0, rho, 1e-14);
}

double measure_of_radii(const SphereGrid& grid, std::span<const double> rho, Exec exec) {
  std::vector<double> mass(grid.size());
  for_each_index(exec, grid.size(), [&](std::size_t i) { mass[i] = radial_mass(grid.dim(), rho[i]); });
  return integrate_samples(grid, mass);
}

}  // namespace

Vec gnomonic(const SpherePoint& v) {
  if (!(v.vertical > 0.0)) throw Error(Errc::outside_domain, "gnomonic: point is not above the equator");
  return v.horizontal / v.vertical;
}

SpherePoint gnomonic_inverse(const Vec& x) {
  const double len = std::sqrt(dot(x, x) + 1.0);
  return {x / len, 1.0 / len};
}

double spherical_measure(const StarBody& chart, Exec exec) {
  return measure_of_radii(chart.grid(), chart.radii(), exec);
}

double cap_measure(int n, double alpha) {
  if (n == 2) return 2.0 * std::numbers::pi * (1.0 - std::cos(alpha));
  if (n == 3) return 2.0 * std::numbers::pi * (alpha - std::sin(alpha) * std::cos(alpha));
  throw Error(Errc::unsupported_dimension, "cap_measure: n must be 2 or 3");
}

SphericalBody::SphericalBody(StarBody chart, double delta_pole)
    : chart_(std::move(chart)), delta_pole_(delta_pole) {
  if (!(delta_pole > 0.0 && delta_pole < half_pi))
    throw Error(Errc::out_of_range, "delta_pole must lie in (0, pi/2)");
  if (chart_.max_radius() > pole_limit(delta_pole))
    throw Error(Errc::body_too_large, "spherical body reaches the pole margin (max chart radius " +
                                          std::to_string(chart_.max_radius()) + ")");
  measure_ = spherical_measure(chart_);
}

SphericalBody SphericalBody::cap(const GridPtr& grid, double alpha, double delta_pole) {
  return SphericalBody(centered_ball(grid, std::tan(alpha)), delta_pole);
}

SphericalBody SphericalBody::from_spec(const BodySpec& spec, const GridPtr& grid) {
  if (spec.chart != "gnomonic" && spec.chart != "euclidean")
    throw Error(Errc::invalid_body, "spherical body needs chart = gnomonic");
  return SphericalBody(build_body(spec, grid), spec.delta_pole);
}

double SphericalBody::spherical_radius(const Vec& v) const { return std::atan(chart_.radial(v)); }

SphericalBody spherical_polar(const SphericalBody& body, Exec exec) {
  const SupportProfile h = support_profile(body.chart(), exec);
  const double limit = pole_limit(body.delta_pole());
  for (double v : h.values())
    if (v >= limit) throw Error(Errc::body_too_large, "spherical_polar: support reaches the pole margin");
  return SphericalBody(polar_of_support(h).reflected(), body.delta_pole());
}

SphericalSteinerResult spherical_steiner(const SphericalBody& body, const Vec& u_in, Exec exec) {
  const Vec u = normalized(u_in);
  const SphereGrid& grid = body.chart().grid();
  const double target = body.measure();
  const double tol = 1e-10;
  SteinerSolver solver(body.chart(), u, exec);
  auto residual = [&](std::span<const double> rho) { return measure_of_radii(grid, rho, exec) - target; };
  auto finish = [&](std::vector<double> rho, double r, bool clamped) {
    return SphericalSteinerResult{SphericalBody(StarBody(body.chart().grid_ptr(), std::move(rho)),
                                                body.delta_pole()),
                                  r, clamped};
  };

  std::vector<double> hi_rho = solver.radii(1.0);
  double f_hi = residual(hi_rho);
  if (std::abs(f_hi) <= tol) return finish(std::move(hi_rho), 1.0, false);
  if (f_hi < 0.0) {
    // Symmetrization never lowers the measure; a small deficit at r = 1 is
    // quadrature noise, and anything beyond the clamp band is a real failure.
    const double f_edge = residual(solver.radii(1.0 + steiner_clamp));
    if (f_edge < 0.0)
      throw Error(Errc::bracket_failure, "spherical_steiner: measure deficit at r = 1 + eps_clamp");
    spdlog::warn("spherical_steiner: r_K in (1, 1 + {}] clamped to 1 (deficit {:.3e})", steiner_clamp,
                 -f_hi);
    return finish(std::move(hi_rho), 1.0, true);
  }

  // Regula falsi (Illinois) on [1e-6, 1]. The measure is increasing in r, and
  // node radii are monotone in r, so each evaluation is bracketed node-wise
  // by the radii at the current bracket ends.
  double lo = 1e-6, hi = 1.0;
  std::vector<double> lo_rho(grid.size(), 0.0);
  double f_lo = -target;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double r = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
    std::vector<double> rho = solver.radii_between(r, lo_rho, hi_rho);
    const double f = residual(rho);
    if (std::abs(f) <= tol || hi - lo <= 1e-15) return finish(std::move(rho), r, false);
    if (f > 0.0) {
      hi = r;
      f_hi = f;
      hi_rho = std::move(rho);
      if (side == 1) f_lo *= 0.5;
      side = 1;
    } else {
      lo = r;
      f_lo = f;
      lo_rho = std::move(rho);
      if (side == -1) f_hi *= 0.5;
      side = -1;
    }
  }
  throw Error(Errc::bracket_failure, "spherical_steiner: r_K did not converge");
}

SupportProfile spherical_projection_support(const SphericalBody& body, Exec exec) {
  return projection_body(body.chart(), exec);
}

SphericalBody spherical_projection_body(const SphericalBody& body, Exec exec) {
  const SupportProfile h = spherical_projection_support(body, exec);
  const double limit = pole_limit(body.delta_pole());
  for (double v : h.values())
    if (v >= limit)
      throw Error(Errc::body_too_large,
                  "spherical projection body leaves the open hemisphere (tan h_s = " + std::to_string(v) + ")");
  return SphericalBody(body_from_support(h, exec), body.delta_pole());
}

double polar_projection_volume(const SupportProfile& h) {
  const MonotoneProfile f = spherical_profile(h.dim());
  std::vector<double> vals(h.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f(h.value(i));
  return integrate_samples(h.grid(), vals);
}

double polar_projection_volume(const SphericalBody& body, Exec exec) {
  return polar_projection_volume(spherical_projection_support(body, exec));
}

double cap_radius_for_measure(int n, double measure) {
  if (!(measure > 0.0 && measure < cap_measure(n, half_pi)))
    throw Error(Errc::out_of_range, "cap_rearrangement: measure must lie below the hemisphere's");
  return bisect([&](double a) { return cap_measure(n, a) - measure; }, 0.0, half_pi, 1e-15);
}

SphericalBody cap_rearrangement(const SphericalBody& body) {
  const double alpha = cap_radius_for_measure(body.dim(), body.measure());
  return SphericalBody::cap(body.chart().grid_ptr(), alpha, body.delta_pole());
}

ChartMetric::Point SphericalMetric::embed(const Vec& x) const {
  const SpherePoint p = gnomonic_inverse(x);
  return {p.horizontal.x, p.horizontal.y, p.horizontal.z, p.vertical};
}

double SphericalMetric::distance(const Point& a, const Point& b) const {
  double chord2 = 0.0;
  for (int k = 0; k < 4; ++k) chord2 += (a[k] - b[k]) * (a[k] - b[k]);
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
}

double spherical_hausdorff(const SphericalBody& a, const SphericalBody& b, Exec exec) {
  return hausdorff_distance(a.chart(), b.chart(), SphericalMetric{}, exec);
}

namespace {

// Chain with the polar projection measures of K* and K already known.
ChainReport spherical_chain_from(const SphericalBody& body, const SphericalBody& star, double polar_star,
                                 double polar_body, double eps, double equality_band) {
  const int n = body.dim();
  const double c0 = unit_ball_volume(n - 1) / (n * unit_ball_volume(n));
  const double sphere_area = n * unit_ball_volume(n);
  const MonotoneProfile f = spherical_profile(n);
  return detail::chain_from_values(c0 * perimeter(star.chart()), profile_inverse(f, polar_star / sphere_area),
                                   profile_inverse(f, polar_body / sphere_area), c0 * perimeter(body.chart()), eps,
                                   equality_band);
}

}  // namespace

ChainReport spherical_chain(const SphericalBody& body, double eps, double equality_band) {
  const SphericalBody star = cap_rearrangement(body);
  return spherical_chain_from(body, star, polar_projection_volume(star), polar_projection_volume(body), eps,
                              equality_band);
}

PettyReport verify_spherical_petty(const SphericalBody& body, const std::vector<Vec>& schedule,
                                   const VerifyOptions& options) {
  const SphericalBody star = cap_rearrangement(body);
  PettyReport rep = detail::run_petty(
      body, star, schedule, options,
      [](const SphericalBody& k, const Vec& u) { return spherical_steiner(k, u); },
      [](const SphericalBody& k) { return k.measure(); },
      [](const SphericalBody& k) { return polar_projection_volume(k); },
      [](const SphericalBody& a, const SphericalBody& b) { return spherical_hausdorff(a, b); });
  rep.geometry = "spherical";
  rep.chain = spherical_chain_from(body, star, rep.rhs, rep.lhs, options.eps_quad, options.equality_band);
  return rep;
}

}  // namespace petty

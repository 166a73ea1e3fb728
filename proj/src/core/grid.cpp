#include "petty/core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "petty/core/error.hpp"
#include "petty/core/quadrature.hpp"

namespace petty {

SphereGrid make_grid(int n, int resolution) {
  if (n != 2 && n != 3)
    throw Error(Errc::unsupported_dimension, "make_grid: n = " + std::to_string(n));
  if (resolution < 8 || resolution % 2 != 0)
    throw Error(Errc::out_of_range, "make_grid: resolution must be even and >= 8");

  SphereGrid g;
  g.dim_ = n;
  g.resolution_ = resolution;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  if (n == 2) {
    const int m = resolution;
    g.n_lat_ = 1;
    g.n_lon_ = m;
    g.dphi_ = two_pi / m;
    g.nodes_.resize(m);
    g.weights_.assign(m, two_pi / m);
    g.antipode_.resize(m);
    for (int i = 0; i < m; ++i) {
      g.nodes_[i] = direction_2d(g.dphi_ * i);
      g.antipode_[i] = static_cast<std::size_t>((i + m / 2) % m);
    }
    return g;
  }

  const int n_lat = resolution;
  const int n_lon = 2 * resolution;
  const int half = n_lat / 2;
  g.n_lat_ = n_lat;
  g.n_lon_ = n_lon;
  g.dphi_ = two_pi / n_lon;

  // Half-range Gauss-Legendre on z in [0, 1], largest z first.
  const GaussRule& rule = gauss_legendre(half);
  std::vector<double> z(half), wz(half);
  for (int k = 0; k < half; ++k) {
    z[k] = 0.5 * (1.0 + rule.x[half - 1 - k]);
    wz[k] = 0.5 * rule.w[half - 1 - k];
  }
  g.ring_theta_.resize(n_lat);
  std::vector<double> ring_w(n_lat);
  for (int i = 0; i < half; ++i) {
    g.ring_theta_[i] = std::acos(z[i]);
    g.ring_theta_[n_lat - 1 - i] = std::numbers::pi - g.ring_theta_[i];
    ring_w[i] = wz[i];
    ring_w[n_lat - 1 - i] = wz[i];
  }
  g.nodes_.resize(static_cast<std::size_t>(n_lat) * n_lon);
  g.weights_.resize(g.nodes_.size());
  g.antipode_.resize(g.nodes_.size());
  for (int i = 0; i < n_lat; ++i) {
    for (int j = 0; j < n_lon; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n_lon + j;
      double zc = i < half ? z[i] : -z[n_lat - 1 - i];
      const double s = std::sqrt(std::max(0.0, 1.0 - zc * zc));
      const double phi = g.dphi_ * j;
      g.nodes_[k] = {s * std::cos(phi), s * std::sin(phi), zc};
      g.weights_[k] = ring_w[i] * g.dphi_;
      g.antipode_[k] = static_cast<std::size_t>(n_lat - 1 - i) * n_lon + (j + n_lon / 2) % n_lon;
    }
  }
  return g;
}

GridPtr make_shared_grid(int n, int resolution) {
  return std::make_shared<const SphereGrid>(make_grid(n, resolution));
}

double integrate(const SphereGrid& grid, const std::function<double(const Vec&)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid.node(i));
    if (!std::isfinite(v))
      throw Error(Errc::non_finite, "integrate: non-finite value at node " + std::to_string(i));
    acc += grid.weight(i) * v;
  }
  return acc;
}

double integrate_samples(const SphereGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw Error(Errc::grid_mismatch, "integrate_samples");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw Error(Errc::non_finite, "integrate_samples: node " + std::to_string(i));
    acc += grid.weight(i) * values[i];
  }
  return acc;
}

}  // namespace petty

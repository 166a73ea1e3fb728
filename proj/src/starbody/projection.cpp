#include "petty/starbody/projection.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "petty/core/quadrature.hpp"
#include "petty/core/roots.hpp"
#include "petty/starbody/interpolant.hpp"
#include "petty/starbody/normals.hpp"

namespace petty {

namespace {

constexpr int gauss_points = 12;

// Cells this close to a corner node use the chord between boundary samples:
// the spline rings across a kink, the straight edge does not.
constexpr int corner_window = 4;

std::vector<double> projection_2d(const StarBody& body, const std::vector<NodeNormal>& normals,
                                  const std::vector<Vec>& v, Exec exec) {
  const SphereGrid& grid = body.grid();
  std::vector<double> vx(v.size()), vy(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    vx[i] = v[i].x;
    vy[i] = v[i].y;
  }
  const SphereInterpolant field(grid, {vx, vy});
  const PeriodicSpline& sx = field.circle_spline(0);
  const PeriodicSpline& sy = field.circle_spline(1);
  const std::size_t m = grid.size();
  const double h = grid.dphi();
  std::vector<char> chord_cell(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!normals[i].corner) continue;
    for (int d = -corner_window; d < corner_window; ++d)
      chord_cell[static_cast<std::size_t>(static_cast<long>(i + m) + d) % m] = 1;
  }
  std::vector<Vec> edge(m);
  for (std::size_t k = 0; k < m; ++k)
    edge[k] = grid.node((k + 1) % m) * body.radius((k + 1) % m) - grid.node(k) * body.radius(k);

  std::vector<double> out(m);
  for_each_index(exec, m, [&](std::size_t iz) {
    const Vec z = grid.node(iz);
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (chord_cell[k]) {
        acc += std::abs(z.x * edge[k].y - z.y * edge[k].x);
        continue;
      }
      const std::size_t k1 = (k + 1) % m;
      acc += integrate_abs_cubic_cell(sx.y(k) * z.x + sy.y(k) * z.y, sx.y(k1) * z.x + sy.y(k1) * z.y,
                                      sx.second(k) * z.x + sy.second(k) * z.y,
                                      sx.second(k1) * z.x + sy.second(k1) * z.y, h);
    }
    out[iz] = 0.5 * acc;
  });
  return out;
}

std::vector<double> projection_3d(const SphereGrid& grid, const std::vector<Vec>& v, Exec exec) {
  const int meridians = 2 * grid.n_lat();
  const int samples = grid.n_lat();
  const double dphi = 2.0 * std::numbers::pi / meridians;
  const double dtheta = std::numbers::pi / samples;

  std::vector<double> out(grid.size());
  for_each_index(exec, grid.size(), [&](std::size_t iz) {
    const Vec z = grid.node(iz);
    // Interpolation is linear, so z . v is interpolated as one channel.
    std::vector<double> zv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) zv[i] = dot(z, v[i]);
    const SphereInterpolant field(grid, {std::move(zv)});
    Vec e1, e2;
    complete_frame(z, e1, e2);
    double total = 0.0;
    std::vector<double> g(samples + 1);
    for (int k = 0; k < meridians; ++k) {
      const double phi = dphi * (k + 0.5);
      const Vec horiz = e1 * std::cos(phi) + e2 * std::sin(phi);
      auto f = [&](double t) { return field.value(horiz * std::sin(t) + z * std::cos(t)); };
      for (int s = 0; s <= samples; ++s) g[s] = f(dtheta * s);
      auto piece = [&](double a, double b) {
        return std::abs(integrate_gauss([&](double t) { return f(t) * std::sin(t); }, a, b, gauss_points));
      };
      double start = 0.0;
      double line = 0.0;
      for (int s = 0; s < samples; ++s) {
        const double ga = g[s], gb = g[s + 1];
        if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) {
          const double root = solve_bracketed(f, dtheta * s, dtheta * (s + 1), ga, gb, 1e-13);
          line += piece(start, root);
          start = root;
        }
      }
      line += piece(start, std::numbers::pi);
      total += line;
    }
    out[iz] = 0.5 * total * dphi;
  });
  return out;
}

}  // namespace

SupportProfile projection_body(const StarBody& body, Exec exec) {
  const std::vector<NodeNormal> normals = node_normals(body, exec);
  const std::vector<Vec> v = surface_vectors(body, normals);
  if (body.dim() == 2) return SupportProfile(body.grid_ptr(), projection_2d(body, normals, v, exec));
  return SupportProfile(body.grid_ptr(), projection_3d(body.grid(), v, exec));
}

SupportProfile projection_body_reference(const StarBody& body) {
  const SphereGrid& grid = body.grid();
  const std::vector<NodeNormal> normals = node_normals(body, Exec::serial);
  std::vector<double> h(grid.size(), 0.0);
  for (std::size_t iz = 0; iz < grid.size(); ++iz) {
    const Vec z = grid.node(iz);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const NodeNormal& nn = normals[i];
      if (nn.degenerate) continue;
      double s = 0.0;
      for (int k = 0; k < nn.count; ++k) s += std::abs(dot(nn.variants[k], z));
      const double scale = grid.dim() == 3 ? body.radius(i) : 1.0;
      acc += grid.weight(i) * scale * s / nn.count;
    }
    h[iz] = 0.5 * acc;
  }
  return SupportProfile(body.grid_ptr(), std::move(h));
}

}  // namespace petty

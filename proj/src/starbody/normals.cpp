#include "petty/starbody/normals.hpp"

#include <cmath>

#include "petty/core/error.hpp"

namespace petty {

namespace {

struct NodeFrame {
  Vec u, e_theta, e_phi;
  double rho = 0.0;
  double inv_sin = 0.0;  // 1 / sin(theta) for n = 3
};

Vec normal_from(const NodeFrame& f, double d_theta, double d_phi) {
  return f.u * f.rho - f.e_theta * d_theta - f.e_phi * (d_phi * f.inv_sin);
}

bool is_degenerate(const NodeFrame& f, const Vec& n) { return f.rho <= degenerate_cos * norm(n); }

NodeFrame frame_at(const StarBody& body, std::size_t i) {
  const SphereInterpolant& ip = body.interpolant();
  NodeFrame f;
  f.u = body.grid().node(i);
  f.rho = body.radius(i);
  f.e_theta = ip.e_theta(i);
  if (body.dim() == 3) {
    f.e_phi = ip.e_phi(i);
    f.inv_sin = 1.0 / std::hypot(f.u.x, f.u.y);
  }
  return f;
}

double disagreement_theta(const StarBody& body, std::size_t i) {
  const NodeFrame f = frame_at(body, i);
  const auto [b, a] = body.interpolant().node_one_sided_theta(i);
  return angle_between(normal_from(f, b, 0.0), normal_from(f, a, 0.0));
}

double disagreement_phi(const StarBody& body, std::size_t i) {
  const NodeFrame f = frame_at(body, i);
  const auto [b, a] = body.interpolant().node_one_sided_phi(i);
  return angle_between(normal_from(f, 0.0, b), normal_from(f, 0.0, a));
}

// Neighbours of node i along theta (through the poles) and along phi.
std::pair<std::size_t, std::size_t> theta_neighbours(const SphereGrid& g, std::size_t i) {
  if (g.dim() == 2) return {(i + g.size() - 1) % g.size(), (i + 1) % g.size()};
  const std::size_t n_lon = static_cast<std::size_t>(g.n_lon());
  const std::size_t n_lat = static_cast<std::size_t>(g.n_lat());
  const std::size_t ring = i / n_lon, col = i % n_lon, opp = (col + n_lon / 2) % n_lon;
  const std::size_t up = ring > 0 ? i - n_lon : opp;
  const std::size_t down = ring + 1 < n_lat ? i + n_lon : (n_lat - 1) * n_lon + opp;
  return {up, down};
}

std::pair<std::size_t, std::size_t> phi_neighbours(const SphereGrid& g, std::size_t i) {
  const std::size_t n_lon = static_cast<std::size_t>(g.n_lon());
  const std::size_t base = i - i % n_lon;
  return {base + (i % n_lon + n_lon - 1) % n_lon, base + (i % n_lon + 1) % n_lon};
}

bool kink_at(double here, double left, double right) {
  return here > corner_angle && here > corner_ratio * std::min(left, right);
}

}  // namespace

bool is_corner_node(const StarBody& body, std::size_t i) {
  const SphereGrid& g = body.grid();
  const auto tn = theta_neighbours(g, i);
  if (kink_at(disagreement_theta(body, i), disagreement_theta(body, tn.first),
              disagreement_theta(body, tn.second)))
    return true;
  if (g.dim() == 2) return false;
  const auto pn = phi_neighbours(g, i);
  return kink_at(disagreement_phi(body, i), disagreement_phi(body, pn.first),
                 disagreement_phi(body, pn.second));
}

std::vector<NodeNormal> node_normals(const StarBody& body, Exec exec) {
  const SphereGrid& grid = body.grid();
  const SphereInterpolant& ip = body.interpolant();
  const std::size_t count = grid.size();
  std::vector<double> dis_t(count), dis_p(count, 0.0);
  for_each_index(exec, count, [&](std::size_t i) {
    dis_t[i] = disagreement_theta(body, i);
    if (grid.dim() == 3) dis_p[i] = disagreement_phi(body, i);
  });

  std::vector<NodeNormal> out(count);
  for_each_index(exec, count, [&](std::size_t i) {
    const NodeFrame f = frame_at(body, i);
    const double dt = ip.node_dtheta(i);
    const double dp = ip.node_dphi(i);
    const auto [tb, tf] = ip.node_one_sided_theta(i);
    const auto [pb, pf] = ip.node_one_sided_phi(i);
    const auto tn = theta_neighbours(grid, i);
    const bool corner_t = kink_at(dis_t[i], dis_t[tn.first], dis_t[tn.second]);
    bool corner_p = false;
    if (grid.dim() == 3) {
      const auto pn = phi_neighbours(grid, i);
      corner_p = kink_at(dis_p[i], dis_p[pn.first], dis_p[pn.second]);
    }
    NodeNormal& nn = out[i];
    nn.corner = corner_t || corner_p;
    const double ts[2] = {tb, tf};
    const double ps[2] = {pb, pf};
    const int nt = corner_t ? 2 : 1;
    const int np = corner_p ? 2 : 1;
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < np; ++b)
        nn.variants[nn.count++] = normal_from(f, corner_t ? ts[a] : dt, corner_p ? ps[b] : dp);
    for (int k = 0; k < nn.count; ++k)
      if (is_degenerate(f, nn.variants[k])) nn.degenerate = true;
  });
  return out;
}

Vec boundary_normal(const StarBody& body, const Vec& u) {
  const Vec d = normalized(u);
  const ValueGrad vg = body.radial_grad(d);
  const Vec n = d * vg.value - vg.grad;
  const Vec nu = normalized(n);
  if (dot(d, nu) <= degenerate_cos)
    throw Error(Errc::degenerate_normal, "boundary_normal: boundary tangent to the ray");
  return nu;
}

PerimeterReport perimeter_report(const StarBody& body, Exec exec) {
  const std::vector<NodeNormal> normals = node_normals(body, exec);
  const SphereGrid& grid = body.grid();
  PerimeterReport rep;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const NodeNormal& nn = normals[i];
    if (nn.corner) ++rep.corner_nodes;
    if (nn.degenerate) {
      rep.degenerate_nodes.push_back(i);
      continue;
    }
    double len = 0.0;
    for (int k = 0; k < nn.count; ++k) len += norm(nn.variants[k]);
    len /= nn.count;
    const double scale = grid.dim() == 3 ? body.radius(i) : 1.0;
    rep.value += grid.weight(i) * scale * len;
  }
  return rep;
}

double perimeter(const StarBody& body) { return perimeter_report(body).value; }

std::vector<Vec> surface_vectors(const StarBody& body, const std::vector<NodeNormal>& normals) {
  std::vector<Vec> v(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const NodeNormal& nn = normals[i];
    if (nn.degenerate) continue;
    Vec acc;
    for (int k = 0; k < nn.count; ++k) acc += nn.variants[k];
    const double scale = body.dim() == 3 ? body.radius(i) : 1.0;
    v[i] = acc * (scale / nn.count);
  }
  return v;
}

}  // namespace petty

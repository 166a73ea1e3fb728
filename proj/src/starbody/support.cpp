#include "petty/starbody/support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "petty/core/error.hpp"
#include "petty/core/roots.hpp"
#include "petty/core/sampling.hpp"
#include "petty/starbody/normals.hpp"

namespace petty {

SupportProfile::SupportProfile(GridPtr grid, std::vector<double> h) : grid_(std::move(grid)) {
  if (h.size() != grid_->size()) throw Error(Errc::grid_mismatch, "SupportProfile: size");
  for (double v : h)
    if (!std::isfinite(v) || v <= 0.0)
      throw Error(Errc::invalid_body, "SupportProfile: support values must be positive");
  auto d = std::make_shared<Data>();
  d->interp = SphereInterpolant(*grid_, {h});
  d->h = std::move(h);
  data_ = std::move(d);
}

double SupportProfile::operator()(const Vec& x) const {
  const double len = norm(x);
  if (len == 0.0) return 0.0;
  return len * data_->interp.value(x / len);
}

namespace {

double local_support_2d(const StarBody& body, const Vec& u, std::size_t best) {
  const SphereGrid& grid = body.grid();
  const double theta0 = grid.dphi() * static_cast<double>(best);
  auto g = [&](double t) {
    const Vec d = direction_2d(t);
    return body.interpolant().value(d) * dot(d, u);
  };
  const double t = golden_max(g, theta0 - grid.dphi(), theta0 + grid.dphi(), 1e-11);
  return g(t);
}

double local_support_3d(const StarBody& body, const Vec& u, std::size_t best) {
  const SphereGrid& grid = body.grid();
  const Vec v = grid.node(best);
  Vec e1, e2;
  complete_frame(v, e1, e2);
  const double span = 1.5 * grid.dphi();
  auto g = [&](double a, double b) {
    const Vec d = normalized(v + e1 * a + e2 * b);
    return body.interpolant().value(d) * dot(d, u);
  };
  double a = 0.0, b = 0.0;
  for (int round = 0; round < 4; ++round) {
    a = golden_max([&](double s) { return g(s, b); }, -span, span, 1e-10);
    b = golden_max([&](double s) { return g(a, s); }, -span, span, 1e-10);
  }
  return g(a, b);
}

}  // namespace

double support(const StarBody& body, const Vec& u) {
  const SphereGrid& grid = body.grid();
  const Vec d = normalized(u);
  // Ties (a flat face orthogonal to d) go to the node closest to d, away
  // from the ends of the face where the interpolant rings.
  std::size_t best = 0;
  double best_val = -1e300;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = dot(grid.node(i), d);
    const double v = body.radius(i) * c;
    const double slack = 1e-12 * std::abs(v);
    if (v > best_val + slack || (v >= best_val - slack && c > best_cos)) {
      best_val = std::max(v, best_val);
      best_cos = c;
      best = i;
    }
  }
  // A vertex maximizes every direction of its normal cone; refining there
  // would only pick up spline ringing.
  if (is_corner_node(body, best)) return best_val * norm(u);
  const double refined = grid.dim() == 2 ? local_support_2d(body, d, best) : local_support_3d(body, d, best);
  return std::max(best_val, refined) * norm(u);
}

SupportProfile support_profile(const StarBody& body, Exec exec) {
  const SphereGrid& grid = body.grid();
  std::vector<double> h(grid.size());
  for_each_index(exec, grid.size(), [&](std::size_t i) { h[i] = support(body, grid.node(i)); });
  return SupportProfile(body.grid_ptr(), std::move(h));
}

StarBody polar(const StarBody& body, Exec exec) { return polar_of_support(support_profile(body, exec)); }

StarBody polar_of_support(const SupportProfile& h) {
  std::vector<double> rho(h.grid().size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 1.0 / h.value(i);
  return StarBody(h.grid_ptr(), std::move(rho));
}

StarBody body_from_support(const SupportProfile& h, Exec exec) {
  return polar(polar_of_support(h), exec);
}

double subadditivity_defect(const SupportProfile& h, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = -1e300;
  for (int k = 0; k < pairs; ++k) {
    const Vec a = random_direction(rng, h.dim());
    const Vec b = random_direction(rng, h.dim()) * (0.2 + 1.8 * uniform01(rng));
    const double lhs = h(a + b);
    const double rhs = h(a) + h(b);
    worst = std::max(worst, (lhs - rhs) / rhs);
  }
  return worst;
}

}  // namespace petty

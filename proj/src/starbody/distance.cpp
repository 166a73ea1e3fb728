#include "petty/starbody/distance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "petty/core/error.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/roots.hpp"

namespace petty {

double EuclideanMetric::distance(const Point& a, const Point& b) const {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

double radial_distance(const StarBody& a, const StarBody& b) {
  if (!a.grid().same_layout(b.grid())) throw Error(Errc::grid_mismatch, "radial_distance");
  double d = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) d = std::max(d, std::abs(a.radius(i) - b.radius(i)));
  return d;
}

namespace {

// sup over boundary nodes of `from` lying outside `to` of the distance to `to`.
double one_sided(const StarBody& from, const StarBody& to, const ChartMetric& metric, Exec exec) {
  const SphereGrid& gf = from.grid();
  const SphereGrid& gt = to.grid();
  std::vector<ChartMetric::Point> target(gt.size());
  for (std::size_t j = 0; j < gt.size(); ++j) target[j] = metric.embed(gt.node(j) * to.radius(j));
  auto boundary = [&](const Vec& d) { return metric.embed(d * to.interpolant().value(d)); };

  std::vector<double> dist(gf.size(), 0.0);
  for_each_index(exec, gf.size(), [&](std::size_t i) {
    const Vec u = gf.node(i);
    const double r = from.radius(i);
    if (r <= to.interpolant().value(u)) return;
    const ChartMetric::Point p = metric.embed(u * r);
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const double d = metric.distance(p, target[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (gt.dim() == 2) {
      const double t0 = gt.dphi() * static_cast<double>(best);
      auto neg = [&](double t) { return -metric.distance(p, boundary(direction_2d(t))); };
      const double t = golden_max(neg, t0 - gt.dphi(), t0 + gt.dphi(), 1e-10);
      best_d = std::min(best_d, -neg(t));
    } else {
      const Vec v = gt.node(best);
      Vec e1, e2;
      complete_frame(v, e1, e2);
      const double span = 1.5 * gt.dphi();
      auto neg = [&](double a, double b) { return -metric.distance(p, boundary(normalized(v + e1 * a + e2 * b))); };
      double a = 0.0, b = 0.0;
      for (int round = 0; round < 3; ++round) {
        a = golden_max([&](double s) { return neg(s, b); }, -span, span, 1e-9);
        b = golden_max([&](double s) { return neg(a, s); }, -span, span, 1e-9);
      }
      best_d = std::min(best_d, -neg(a, b));
    }
    dist[i] = best_d;
  });
  return *std::max_element(dist.begin(), dist.end());
}

}  // namespace

double hausdorff_distance(const StarBody& a, const StarBody& b, const ChartMetric& metric, Exec exec) {
  return std::max(one_sided(a, b, metric, exec), one_sided(b, a, metric, exec));
}

double hausdorff_distance(const StarBody& a, const StarBody& b) {
  return hausdorff_distance(a, b, EuclideanMetric{});
}

StarBody centered_ball(const GridPtr& grid, double radius) {
  return StarBody(grid, std::vector<double>(grid->size(), radius));
}

StarBody rearrangement(const StarBody& body) {
  const int n = body.dim();
  const double radius = std::pow(body.volume() / unit_ball_volume(n), 1.0 / n);
  return centered_ball(body.grid_ptr(), radius);
}

}  // namespace petty

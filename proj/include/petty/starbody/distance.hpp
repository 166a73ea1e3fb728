#pragma once

#include <array>

#include "petty/core/exec.hpp"
#include "petty/starbody/star_body.hpp"

namespace petty {

// Metric on the space a chart stands for. Points are embedded once (up to
// four coordinates) so the pairwise distance stays cheap.
class ChartMetric {
 public:
  using Point = std::array<double, 4>;
  virtual ~ChartMetric() = default;
  virtual Point embed(const Vec& chart_point) const = 0;
  virtual double distance(const Point& a, const Point& b) const = 0;
};

class EuclideanMetric final : public ChartMetric {
 public:
  Point embed(const Vec& x) const override { return {x.x, x.y, x.z, 0.0}; }
  double distance(const Point& a, const Point& b) const override;
};

// max_i |rho_K(u_i) - rho_L(u_i)|; both bodies must share the grid layout.
double radial_distance(const StarBody& a, const StarBody& b);

// Two-sided Hausdorff distance between the bodies (as sets) under `metric`,
// sampled at the boundary nodes of each body; the nearest boundary point of
// the other body is found by a node search refined on its interpolant.
double hausdorff_distance(const StarBody& a, const StarBody& b, const ChartMetric& metric,
                          Exec exec = default_exec());
double hausdorff_distance(const StarBody& a, const StarBody& b);

// Centered ball with the same volume.
StarBody rearrangement(const StarBody& body);
StarBody centered_ball(const GridPtr& grid, double radius);

}  // namespace petty

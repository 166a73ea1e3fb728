#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "petty/core/exec.hpp"
#include "petty/core/grid.hpp"
#include "petty/starbody/interpolant.hpp"
#include "petty/starbody/star_body.hpp"

namespace petty {

// Support function sampled on a grid (positive: the origin is interior).
class SupportProfile {
 public:
  SupportProfile(GridPtr grid, std::vector<double> h);

  int dim() const { return grid_->dim(); }
  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return data_->h; }
  double value(std::size_t i) const { return data_->h[i]; }
  // Interpolated, extended 1-homogeneously off the sphere.
  double operator()(const Vec& x) const;

 private:
  struct Data {
    std::vector<double> h;
    SphereInterpolant interp;
  };
  GridPtr grid_;
  std::shared_ptr<const Data> data_;
};

// h_K(u) = max_{x in K} x . u: best node followed by a local search on the
// interpolated boundary.
double support(const StarBody& body, const Vec& u);
SupportProfile support_profile(const StarBody& body, Exec exec = default_exec());

// rho_{K*} = 1 / h_K. For non-convex K this is the polar of the convex hull.
StarBody polar(const StarBody& body, Exec exec = default_exec());
// Star body with rho = 1 / h (the polar of the convex body with support h).
StarBody polar_of_support(const SupportProfile& h);
// Convex body whose support function is h, via the double polar.
StarBody body_from_support(const SupportProfile& h, Exec exec = default_exec());

// Largest relative violation of h(a + b) <= h(a) + h(b) over random pairs
// (<= 0 up to interpolation error for a genuine support function).
double subadditivity_defect(const SupportProfile& h, int pairs, std::uint64_t seed);

}  // namespace petty

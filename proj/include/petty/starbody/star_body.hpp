#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "petty/core/grid.hpp"
#include "petty/core/rotation.hpp"
#include "petty/core/vec.hpp"
#include "petty/starbody/interpolant.hpp"

namespace petty {

enum class Interpolation { cubic_spline };

// Star body in R^n (n = 2, 3) given by radial samples rho(u_i) on a SphereGrid.
// Immutable; copies share the samples and the interpolant.
//
// Invariants checked on construction (Error(invalid_body) otherwise):
//   - every sample is finite and >= inner_radius > 0;
//   - adjacent samples differ by at most the slope budget of a body that is
//     star-shaped with respect to B(inner_radius) and contained in B(max rho).
class StarBody {
 public:
  // inner_radius defaults to the smallest sample.
  StarBody(GridPtr grid, std::vector<double> rho, std::optional<double> inner_radius = {});

  static StarBody from_function(GridPtr grid, const std::function<double(const Vec&)>& rho,
                                std::optional<double> inner_radius = {});

  int dim() const;
  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> radii() const { return data_->rho; }
  double radius(std::size_t i) const { return data_->rho[i]; }
  double inner_radius() const { return data_->r_in; }
  double min_radius() const { return data_->min_rho; }
  double max_radius() const { return data_->max_rho; }
  Interpolation interpolation() const { return Interpolation::cubic_spline; }
  const SphereInterpolant& interpolant() const { return data_->interp; }

  // rho_K(x) = rho(x / |x|) / |x| (degree -1 homogeneous); for unit x this is
  // the interpolated radial function.
  double radial(const Vec& x) const;
  ValueGrad radial_grad(const Vec& u) const;
  Vec boundary_point(const Vec& u) const { return u * radial(u); }

  bool contains(const Vec& x) const;
  double volume() const;

  StarBody dilated(double s) const;
  StarBody reflected() const;  // -K, exact on the antipodally closed grid
  StarBody rotated(const Rotation& rot) const;

 private:
  struct Data {
    std::vector<double> rho;
    double r_in = 0.0;
    double min_rho = 0.0;
    double max_rho = 0.0;
    SphereInterpolant interp;
  };
  GridPtr grid_;
  std::shared_ptr<const Data> data_;
};

// Checks the star-body invariants for samples on `grid`; throws Error(invalid_body).
void validate_radii(const SphereGrid& grid, std::span<const double> rho, double inner_radius);

}  // namespace petty

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "petty/core/vec.hpp"

namespace petty {

// Quadrature nodes and weights on S^{n-1}, closed under u -> -u.
//
// n = 2: `resolution` equiangular nodes theta_i = 2 pi i / M with weight 2 pi / M.
// n = 3: `resolution` latitude rings (Gauss-Legendre in z = cos(theta) on [0, 1],
//        mirrored to [-1, 0]) times 2 * resolution equiangular longitudes.
//        Node (ring i, column j) has index i * n_lon + j; ring 0 is nearest +e3.
class SphereGrid {
 public:
  int dim() const { return dim_; }
  int resolution() const { return resolution_; }
  std::size_t size() const { return nodes_.size(); }

  std::span<const Vec> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  const Vec& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t antipode(std::size_t i) const { return antipode_[i]; }

  // Structure of the product grid (n = 3); for n = 2 there is one "ring".
  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }
  // Polar angles of the rings (n = 3), increasing from near 0 to near pi.
  std::span<const double> ring_theta() const { return ring_theta_; }
  // Longitude / angle spacing.
  double dphi() const { return dphi_; }

  bool same_layout(const SphereGrid& other) const {
    return dim_ == other.dim_ && resolution_ == other.resolution_;
  }

 private:
  friend SphereGrid make_grid(int n, int resolution);

  int dim_ = 0;
  int resolution_ = 0;
  int n_lat_ = 1;
  int n_lon_ = 0;
  double dphi_ = 0.0;
  std::vector<Vec> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> antipode_;
  std::vector<double> ring_theta_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

// Throws Error(unsupported_dimension) for n outside {2, 3} and
// Error(out_of_range) for resolution < 8 or odd resolution.
SphereGrid make_grid(int n, int resolution);
GridPtr make_shared_grid(int n, int resolution);

// sum_i w_i f(u_i); throws Error(non_finite) if f is not finite at a node.
double integrate(const SphereGrid& grid, const std::function<double(const Vec&)>& f);
double integrate_samples(const SphereGrid& grid, std::span<const double> values);

// Unit direction from spherical angles (n = 3) or an angle (n = 2).
inline Vec direction_2d(double theta) { return {std::cos(theta), std::sin(theta), 0.0}; }
inline Vec direction_3d(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

}  // namespace petty

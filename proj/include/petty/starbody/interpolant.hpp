#pragma once

#include <span>
#include <vector>

#include "petty/core/grid.hpp"
#include "petty/core/vec.hpp"

namespace petty {

// Periodic cubic spline through (x_k, y_k), period `period`, knots ascending in
// [x_0, x_0 + period).
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(std::vector<double> knots, double period, std::span<const double> values);

  struct Cell {
    std::size_t k = 0;
    double t = 0.0;  // offset from knot k
  };
  Cell cell_of(double x) const;
  double value_at(const Cell& c) const;
  double derivative_at(const Cell& c) const;

  double value(double x) const { return value_at(cell_of(x)); }
  double derivative(double x) const { return derivative_at(cell_of(x)); }
  double knot_derivative(std::size_t k) const;
  std::size_t size() const { return y_.size(); }
  double knot(std::size_t k) const { return x_[k]; }
  double y(std::size_t k) const { return y_[k]; }
  double second(std::size_t k) const { return m_[k]; }
  double period() const { return period_; }
  double cell_width(std::size_t k) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
  double period_ = 0.0;
  bool uniform_ = false;
};

// Exact integral of |S| over one spline cell of width h, where S has end
// values y0, y1 and second derivatives m0, m1.
double integrate_abs_cubic_cell(double y0, double y1, double m0, double m1, double h);

struct ValueGrad {
  double value = 0.0;
  Vec grad;  // tangential gradient on the sphere
};

// Smooth interpolant of node values on a SphereGrid, with `channels`
// independent value sets.
//
// n = 2: periodic cubic spline in the angle.
// n = 3: tensor 6 x 6 Lagrange stencil. Along a longitude the node sequence
//        continues through each pole into the opposite longitude, so every
//        column is a periodic sequence in theta over [0, 2 pi); across
//        longitudes the stencil is equiangular. Node derivatives use the
//        centered 5-point stencils.
class SphereInterpolant {
 public:
  SphereInterpolant() = default;
  SphereInterpolant(const SphereGrid& grid, std::vector<std::vector<double>> channels);

  int channels() const { return static_cast<int>(channel_count_); }
  double value(const Vec& u, int channel = 0) const;
  void values(const Vec& u, double* out) const;
  ValueGrad value_grad(const Vec& u, int channel = 0) const;

  // Derivatives at node i (d/dtheta for n = 2; (d/dtheta, d/dphi) for n = 3).
  double node_dtheta(std::size_t i, int channel = 0) const;
  double node_dphi(std::size_t i, int channel = 0) const;

  // One-sided differences at node i along theta / phi: {backward, forward}.
  std::pair<double, double> node_one_sided_theta(std::size_t i, int channel = 0) const;
  std::pair<double, double> node_one_sided_phi(std::size_t i, int channel = 0) const;

  // Tangent frame at node i.
  Vec e_theta(std::size_t i) const;
  Vec e_phi(std::size_t i) const;

  // n = 2 only.
  const PeriodicSpline& circle_spline(int channel) const { return splines_[channel]; }

 private:
  double raw(int channel, int i, int j) const {
    return raw_[channel][static_cast<std::size_t>(i) * n_lon_ + j];
  }
  // Value of column j at position k of its periodic great-circle sequence
  // (k in [0, 2 n_lat)); positions >= n_lat lie on the opposite longitude.
  double circle_value(int channel, int j, int k) const {
    if (k < n_lat_) return raw(channel, k, j);
    return raw(channel, 2 * n_lat_ - 1 - k, (j + n_lon_ / 2) % n_lon_);
  }
  const double* circle_row(int j, int k) const {
    return &circle_[(static_cast<std::size_t>(j) * 2 * n_lat_ + k) * channel_count_];
  }
  // Position k of the periodic theta sequence, continued past 2 pi.
  double unwrapped_theta(int k) const;
  void eval3(const Vec& u, int channel_lo, int channel_hi, double* val, double* dth,
             double* dph, double& theta, double& phi) const;

  int dim_ = 0;
  int n_lat_ = 0;
  int n_lon_ = 0;
  double dphi_ = 0.0;
  std::size_t channel_count_ = 0;
  std::vector<Vec> nodes_;
  std::vector<double> ring_theta_;
  std::vector<double> circle_theta_;  // n = 3: 2 n_lat positions in [0, 2 pi)
  std::vector<double> circle_;        // n = 3: [column][position][channel]
  std::vector<double> theta_bary_;    // n = 3: 1 / prod(x_a - x_b) per stencil start, 6 per row
  std::vector<PeriodicSpline> splines_;  // n = 2: one per channel
  std::vector<std::vector<double>> raw_;
};

}  // namespace petty

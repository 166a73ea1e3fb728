#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "petty/core/exec.hpp"
#include "petty/core/vec.hpp"
#include "petty/starbody/star_body.hpp"

namespace petty {

// Intersection of K with the line {x' + s u}, as parameter intervals in s.
struct IntervalSlice {
  std::vector<std::pair<double, double>> intervals;
  double total_length() const;
};

// Scan with 4 x resolution samples over the body's extent followed by
// bisection of every membership change to 1e-10. The direct route, used as
// the reference for ChordIndex.
IntervalSlice slice(const StarBody& body, const Vec& u, const Vec& base);

// Fast chord lengths L(x') = H^1(K cap (x' + R u)) for many base points with
// a fixed u. The boundary is sampled densely (a closed polyline in the plane,
// a triangulated sphere image in space); every crossing of the query line
// with that sample is located through a bucket index and then refined on the
// interpolated boundary itself.
class ChordIndex {
 public:
  ChordIndex(const StarBody& body, const Vec& u);
  ~ChordIndex();
  ChordIndex(ChordIndex&&) noexcept;
  ChordIndex& operator=(ChordIndex&&) noexcept;

  // base is projected onto u^perp first.
  double length(const Vec& base) const;
  const Vec& direction() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Radii of the (optionally slice-scaled) Steiner symmetral
//   S^r_u K = { x' + s u : |s| <= r L(x') / 2 }
// at every grid node. r = 1 is the Euclidean symmetral; the spherical module
// searches r, the hyperbolic module dilates the r = 1 result.
class SteinerSolver {
 public:
  SteinerSolver(const StarBody& body, const Vec& u, Exec exec = default_exec());

  std::vector<double> radii(double r) const;
  // Same, reusing per-node brackets from neighbouring scale factors:
  // lower[i] <= result[i] <= upper[i] whenever r_lower <= r <= r_upper.
  std::vector<double> radii_between(double r, std::span<const double> lower,
                                    std::span<const double> upper) const;

  const StarBody& body() const { return body_; }

 private:
  double node_radius(std::size_t i, double r, double lo, double hi) const;

  StarBody body_;
  Vec u_;
  Exec exec_;
  ChordIndex chords_;
  double reach_ = 0.0;
};

// Width of the band (1, 1 + steiner_clamp] in which a measure-restoring
// factor r_K is treated as quadrature noise and clamped to 1.
inline constexpr double steiner_clamp = 1e-6;

StarBody steiner(const StarBody& body, const Vec& u, Exec exec = default_exec());

// Node radii through slice() and membership bisection only; serial.
StarBody steiner_reference(const StarBody& body, const Vec& u);

}  // namespace petty

#pragma once

#include <array>
#include <cmath>

#include "petty/core/vec.hpp"

namespace petty {

// Proper rotation of R^3 (planar rotations act on the x-y plane).
struct Rotation {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec apply(const Vec& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Rotation inverse() const {
    Rotation r;
    r.m = {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
    return r;
  }

  static Rotation planar(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Rotation r;
    r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return r;
  }

  // Rodrigues formula.
  static Rotation about_axis(const Vec& axis, double angle) {
    const Vec k = normalized(axis);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double t = 1.0 - c;
    Rotation r;
    r.m = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
           t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
           t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
    return r;
  }
};

}  // namespace petty

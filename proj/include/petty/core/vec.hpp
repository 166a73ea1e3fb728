#pragma once

#include <cmath>

namespace petty {

// Point or direction in R^2 / R^3. Two-dimensional values keep z == 0.
struct Vec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec& operator+=(const Vec& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
constexpr Vec operator-(const Vec& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec operator*(Vec a, double s) { return a *= s; }
constexpr Vec operator*(double s, Vec a) { return a *= s; }
constexpr Vec operator/(Vec a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec cross(const Vec& a, const Vec& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec normalized(const Vec& a) { return a / norm(a); }

// Angle between two nonzero vectors, robust near 0 and pi.
inline double angle_between(const Vec& a, const Vec& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// Right-handed orthonormal pair completing the unit vector w to a frame.
inline void complete_frame(const Vec& w, Vec& e1, Vec& e2) {
  Vec helper = std::abs(w.x) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
  e1 = normalized(cross(helper, w));
  e2 = cross(w, e1);
}

}  // namespace petty

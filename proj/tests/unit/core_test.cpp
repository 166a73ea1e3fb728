#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "petty/core/error.hpp"
#include "petty/core/exec.hpp"
#include "petty/core/grid.hpp"
#include "petty/core/profile.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/roots.hpp"
#include "petty/core/sampling.hpp"

using namespace petty;
constexpr double pi = std::numbers::pi;

TEST(UnitBallVolume, LowDimensions) {
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(2), pi, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * pi / 3.0, 1e-14);
  EXPECT_THROW(unit_ball_volume(0), Error);
}

TEST(Grid, CircleWeights) {
  const SphereGrid g = make_grid(2, 360);
  ASSERT_EQ(g.size(), 360u);
  for (double w : g.weights()) EXPECT_NEAR(w, 2.0 * pi / 360.0, 1e-16);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec sum = g.node(i) + g.node(g.antipode(i));
    EXPECT_LT(norm(sum), 1e-15);
  }
}

TEST(Grid, SphereTotalArea) {
  const SphereGrid g = make_grid(3, 32);
  EXPECT_EQ(g.size(), 32u * 64u);
  EXPECT_NEAR(integrate(g, [](const Vec&) { return 1.0; }), 4.0 * pi, 1e-9);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(norm(g.node(i)), 1.0, 1e-14);
    EXPECT_LT(norm(g.node(i) + g.node(g.antipode(i))), 1e-14);
    EXPECT_EQ(g.weight(i), g.weight(g.antipode(i)));
  }
}

TEST(Grid, AbsoluteCosineIntegrals) {
  // int |cos| over the circle is 4. The 8-node rule sees the kink and gives
  // (pi / 4)(2 + 2 sqrt 2); the error falls off as 1 / M^2.
  auto abs_x = [](const Vec& u) { return std::abs(u.x); };
  EXPECT_NEAR(integrate(make_grid(2, 8), abs_x), pi / 4 * (2 + 2 * std::sqrt(2.0)), 1e-14);
  EXPECT_NEAR(integrate(make_grid(2, 720), abs_x), 4.0, 1e-4);
  const double e1 = std::abs(integrate(make_grid(2, 80), abs_x) - 4.0);
  const double e2 = std::abs(integrate(make_grid(2, 160), abs_x) - 4.0);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
  // On S^2, int |u . v| du = 2 pi; the kink limits the accuracy.
  const SphereGrid g = make_grid(3, 32);
  const Vec v = normalized(Vec{0.3, -0.5, 0.8});
  EXPECT_NEAR(integrate(g, [&](const Vec& u) { return std::abs(dot(u, v)); }), 2.0 * pi, 2e-2);
  // Polynomials of low degree are exact: int z^2 = 4 pi / 3.
  EXPECT_NEAR(integrate(g, [](const Vec& u) { return u.z * u.z; }), 4.0 * pi / 3.0, 1e-12);
}

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(make_grid(4, 16), Error);
  EXPECT_THROW(make_grid(2, 7), Error);
  EXPECT_THROW(make_grid(3, 4), Error);
  const SphereGrid g = make_grid(2, 16);
  EXPECT_THROW(integrate(g, [](const Vec& u) { return 1.0 / (u.x - 1.0); }), Error);
}

TEST(Roots, BisectSqrtTwo) {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-13);
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-10), Error);
}

TEST(Roots, IllinoisMatchesBisection) {
  auto f = [](double x) { return std::cos(x) - x; };
  const double a = bisect(f, 0.0, 1.0, 1e-14);
  const double b = solve_bracketed(f, 0.0, 1.0, f(0.0), f(1.0), 1e-14);
  EXPECT_NEAR(a, b, 1e-13);
}

TEST(Quadrature, AdaptiveClosedForms) {
  EXPECT_NEAR(integrate_adaptive([](double r) { return r / std::pow(1 + r * r, 1.5); }, 0.0, 1.0),
              1.0 - 1.0 / std::sqrt(2.0), 1e-13);
  // int_0^r t^2 / sqrt(1 + t^2) = (r sqrt(1 + r^2) - asinh r) / 2
  const double r = 2.5;
  EXPECT_NEAR(integrate_adaptive([](double t) { return t * t / std::sqrt(1 + t * t); }, 0.0, r),
              0.5 * (r * std::sqrt(1 + r * r) - std::asinh(r)), 1e-12);
}

TEST(Profile, SphericalTwoDimensional) {
  // n = 2: F(t) = 1 - t / sqrt(1 + t^2).
  const MonotoneProfile f = spherical_profile(2);
  for (double t : {0.0, 0.3, 1.0, 4.0})
    EXPECT_NEAR(f(t), 1.0 - t / std::sqrt(1.0 + t * t), 1e-12) << t;
  EXPECT_NEAR(profile_inverse(f, 1.0 - 1.0 / std::sqrt(2.0)), 1.0, 1e-9);
  EXPECT_EQ(f.direction, Monotonicity::decreasing);
}

TEST(Profile, SphericalThreeDimensional) {
  // n = 3: F_2(s) = s/2 - sin(2s)/4.
  const MonotoneProfile f = spherical_profile(3);
  for (double t : {0.1, 1.0, 3.0}) {
    const double s = pi / 2 - std::atan(t);
    EXPECT_NEAR(f(t), s / 2 - std::sin(2 * s) / 4, 1e-12);
  }
}

TEST(Profile, HyperbolicTwoDimensional) {
  // n = 2: F(t) = sqrt(1 + 1/t^2) - 1.
  const MonotoneProfile f = hyperbolic_profile(2);
  for (double t : {0.2, 1.0, 5.0}) EXPECT_NEAR(f(t), std::sqrt(1 + 1 / (t * t)) - 1, 1e-12);
  EXPECT_NEAR(profile_inverse(f, std::sqrt(2.0) - 1.0), 1.0, 1e-9);
}

TEST(Profile, InverseRoundTripAndRange) {
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    for (const MonotoneProfile& f : {spherical_profile(n), hyperbolic_profile(n)}) {
      for (int k = 0; k < 20; ++k) {
        const double t = 0.05 + 5.0 * uniform01(rng);
        EXPECT_NEAR(profile_inverse(f, f(t)), t, 1e-8 * std::max(1.0, t));
      }
    }
  }
  EXPECT_THROW(profile_inverse(spherical_profile(2), 1.5), Error);
  EXPECT_THROW(profile_inverse(hyperbolic_profile(2), -0.1), Error);
}

TEST(Profile, MonotoneAndConvexSpotChecks) {
  for (int n : {2, 3}) {
    for (const MonotoneProfile& f : {spherical_profile(n), hyperbolic_profile(n)}) {
      double prev = f(0.05);
      for (double t = 0.1; t < 6.0; t += 0.05) {
        const double cur = f(t);
        EXPECT_LT(cur, prev);
        EXPECT_GE(f(t - 0.05) + f(t + 0.05), 2 * cur - 1e-12);
        prev = cur;
      }
    }
  }
}

TEST(Exec, SerialAndParallelAgreeBitwise) {
  std::vector<double> a(1000), b(1000);
  auto body = [](std::vector<double>& out) {
    return [&out](std::size_t i) { out[i] = std::sin(0.37 * static_cast<double>(i)) * std::exp(-1e-3 * i); };
  };
  for_each_index(Exec::serial, a.size(), body(a));
  for_each_index(Exec::parallel, b.size(), body(b));
  EXPECT_EQ(a, b);
}

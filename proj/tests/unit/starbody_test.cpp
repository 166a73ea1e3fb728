#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "petty/core/error.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/rotation.hpp"
#include "petty/core/sampling.hpp"
#include "petty/starbody/body_spec.hpp"
#include "petty/starbody/distance.hpp"
#include "petty/starbody/normals.hpp"
#include "petty/starbody/projection.hpp"
#include "petty/starbody/star_body.hpp"
#include "petty/starbody/steiner.hpp"
#include "petty/starbody/support.hpp"

using namespace petty;
constexpr double pi = std::numbers::pi;

namespace {

StarBody ellipse(const GridPtr& g, double a, double b, double deg = 0.0) {
  BodySpec s;
  s.kind = "ellipsoid";
  s.dim = 2;
  s.axes = {a, b};
  s.rotation_deg = deg;
  return build_body(s, g);
}

StarBody square(const GridPtr& g) {
  BodySpec s;
  s.kind = "cube";
  s.dim = 2;
  s.half_width = 1.0;
  return build_body(s, g);
}

// Support of the ellipse with semi-axes a, b rotated by t: |diag(a, b) R^T z|.
double ellipse_support(double a, double b, double t, const Vec& z) {
  const double c = std::cos(t), s = std::sin(t);
  const double p = c * z.x + s * z.y, q = -s * z.x + c * z.y;
  return std::hypot(a * p, b * q);
}

// Pi of an ellipse: Pi(A B) = |det A| A^{-T} Pi B with Pi B = B(2), so
// h(z) = 2 a b |diag(1/a, 1/b) R^T z|.
double ellipse_pi_support(double a, double b, double t, const Vec& z) {
  return 2.0 * a * b * ellipse_support(1.0 / a, 1.0 / b, t, z);
}

double max_rel(const SupportProfile& h, const std::function<double(const Vec&)>& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < h.grid().size(); ++i) {
    const double e = exact(h.grid().node(i));
    worst = std::max(worst, std::abs(h.value(i) - e) / e);
  }
  return worst;
}

}  // namespace

TEST(StarBody, Membership) {
  auto g = make_shared_grid(2, 720);
  const StarBody disk = centered_ball(g, 1.0);
  EXPECT_TRUE(disk.contains({0.5, 0.0, 0.0}));
  EXPECT_FALSE(disk.contains({2.0, 0.0, 0.0}));
  EXPECT_TRUE(disk.contains({0.0, 0.0, 0.0}));
  const StarBody e = ellipse(g, 2.0, 1.0);
  EXPECT_TRUE(e.contains({1.9, 0.1, 0.0}));
  EXPECT_FALSE(e.contains({1.9, 0.4, 0.0}));
}

TEST(StarBody, Volumes) {
  auto g = make_shared_grid(2, 720);
  EXPECT_NEAR(centered_ball(g, 1.0).volume(), pi, 1e-12);
  // The kinks of rho^2 / 2 sit on nodes; the equal-weight rule then carries
  // the Euler-Maclaurin term (h^2 / 12) * sum of slope jumps = 16 h^2 / 12.
  const double h = 2.0 * pi / 720.0;
  EXPECT_NEAR(square(g).volume() - 4.0, 16.0 * h * h / 12.0, 1e-8);
  EXPECT_NEAR(square(make_shared_grid(2, 1440)).volume(), 4.0, 3e-5);
  EXPECT_NEAR(ellipse(g, 2.0, 1.0).volume(), 2.0 * pi, 1e-10);
  BodySpec s;
  s.kind = "ellipsoid";
  s.dim = 3;
  s.axes = {1.0, 0.7, 0.5};
  s.rotation_deg = 25.0;
  s.rotation_axis = {1.0, 2.0, 0.5};
  const StarBody e3 = build_body(s, make_shared_grid(3, 32));
  EXPECT_NEAR(e3.volume() / (4.0 * pi / 3.0 * 0.35) - 1.0, 0.0, 1e-6);
}

TEST(StarBody, RejectsInvalidSamples) {
  auto g = make_shared_grid(2, 16);
  std::vector<double> rho(16, 1.0);
  rho[3] = -0.2;
  try {
    StarBody b(g, rho);
    FAIL() << "accepted a negative radius";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_body);
  }
  rho[3] = std::nan("");
  EXPECT_THROW(StarBody(g, rho), Error);
  // A jump steeper than any star body about B(0.5) allows.
  auto fine = make_shared_grid(2, 720);
  rho.assign(720, 1.0);
  rho[5] = 1.5;
  EXPECT_THROW(StarBody(fine, rho, 0.5), Error);
  rho[5] = 1.0;
  EXPECT_THROW(StarBody(fine, rho, 1.5), Error);
  EXPECT_NO_THROW(StarBody(fine, rho, 0.5));
}

TEST(StarBody, ReflectAndRotate) {
  auto g = make_shared_grid(2, 360);
  const StarBody e = ellipse(g, 1.5, 0.6, 20.0);
  const StarBody r = e.reflected();
  for (std::size_t i = 0; i < g->size(); ++i)
    EXPECT_DOUBLE_EQ(r.radius(i), e.radius(g->antipode(i)));
  const StarBody rot = e.rotated(Rotation::planar(0.3));
  const StarBody direct = ellipse(g, 1.5, 0.6, 20.0 + 0.3 * 180.0 / pi);
  EXPECT_LT(radial_distance(rot, direct), 1e-7);
}

TEST(Perimeter, ClosedForms) {
  EXPECT_NEAR(perimeter(centered_ball(make_shared_grid(2, 720), 1.0)), 2.0 * pi, 1e-10);
  EXPECT_NEAR(perimeter(square(make_shared_grid(2, 1440))), 8.0, 1e-2);
  // Ellipse a = 2, b = 1: arc length by direct quadrature of |x'(t)|.
  const double exact = integrate_adaptive(
      [](double t) { return std::hypot(2.0 * std::sin(t), std::cos(t)); }, 0.0, 2.0 * pi, 1e-13);
  EXPECT_NEAR(exact, 9.68844822, 1e-7);
  EXPECT_NEAR(perimeter(ellipse(make_shared_grid(2, 720), 2.0, 1.0)), exact, 1e-7);
  EXPECT_NEAR(perimeter(centered_ball(make_shared_grid(3, 24), 0.8)), 4.0 * pi * 0.64, 1e-8);
}

TEST(Normals, SmoothAndFlat) {
  auto g = make_shared_grid(2, 720);
  const Vec u = normalized(Vec{0.3, -0.8, 0.0});
  EXPECT_LT(norm(boundary_normal(centered_ball(g, 1.0), u) - u), 1e-10);
  const double t = 10.0 * pi / 180.0;
  EXPECT_LT(norm(boundary_normal(square(g), direction_2d(t)) - Vec{1.0, 0.0, 0.0}), 1e-3);
  EXPECT_LT(norm(boundary_normal(ellipse(g, 2.0, 1.0), {1.0, 0.0, 0.0}) - Vec{1.0, 0.0, 0.0}),
            1e-12);
  // The square has exactly its four vertices flagged.
  const auto normals = node_normals(square(g));
  int corners = 0;
  for (const auto& n : normals) corners += n.corner ? 1 : 0;
  EXPECT_EQ(corners, 4);
  EXPECT_TRUE(normals[90].corner);
}

TEST(Normals, SmoothBodiesHaveNoCorners3D) {
  BodySpec s;
  s.kind = "ellipsoid";
  s.dim = 3;
  s.axes = {1.0, 0.7, 0.5};
  const StarBody e = build_body(s, make_shared_grid(3, 32));
  const auto normals = node_normals(e);
  double worst = 0.0;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    EXPECT_FALSE(normals[i].corner) << i;
    const Vec x = e.boundary_point(e.grid().node(i));
    const Vec exact = normalized(Vec{x.x, x.y / 0.49, x.z / 0.25});
    worst = std::max(worst, angle_between(normals[i].variants[0], exact));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Support, ClosedForms) {
  auto g = make_shared_grid(2, 720);
  EXPECT_NEAR(support(centered_ball(g, 1.7), normalized(Vec{0.2, 0.9, 0.0})), 1.7, 1e-12);
  const StarBody sq = square(g);
  EXPECT_NEAR(support(sq, {1.0, 0.0, 0.0}), 1.0, 1e-12);
  EXPECT_NEAR(support(sq, normalized(Vec{1.0, 1.0, 0.0})), std::sqrt(2.0), 1e-12);
  const StarBody e = ellipse(g, 1.4, 0.6, 35.0);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const Vec u = random_direction(rng, 2);
    EXPECT_NEAR(support(e, u), ellipse_support(1.4, 0.6, 35.0 * pi / 180.0, u), 1e-8);
  }
}

TEST(Support, Subadditive) {
  auto g = make_shared_grid(2, 720);
  EXPECT_LT(subadditivity_defect(support_profile(ellipse(g, 1.4, 0.6, 35.0)), 2000, 11), 1e-8);
  const SupportProfile h3 = support_profile(centered_ball(make_shared_grid(3, 16), 1.0));
  EXPECT_LT(subadditivity_defect(h3, 500, 12), 1e-8);
}

TEST(Polar, ClosedForms) {
  auto g = make_shared_grid(2, 720);
  EXPECT_LT(radial_distance(polar(centered_ball(g, 2.0)), centered_ball(g, 0.5)), 1e-12);
  const StarBody cross = polar(square(g));
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Vec u = g->node(i);
    EXPECT_NEAR(cross.radius(i), 1.0 / (std::abs(u.x) + std::abs(u.y)), 1e-12);
  }
  const StarBody e = ellipse(g, 1.4, 0.6, 35.0);
  EXPECT_LT(radial_distance(polar(e), ellipse(g, 1.0 / 1.4, 1.0 / 0.6, 35.0)), 1e-8);
  EXPECT_LT(radial_distance(polar(polar(e)), e), 1e-8);
  EXPECT_LT(radial_distance(polar(polar(centered_ball(g, 2.0))), centered_ball(g, 2.0)), 1e-12);
}

TEST(Polar, InvolutionOnSquare) {
  auto g = make_shared_grid(2, 720);
  EXPECT_LT(radial_distance(polar(polar(square(g))), square(g)), 1e-4);
}

TEST(Projection, Balls) {
  auto g2 = make_shared_grid(2, 720);
  const SupportProfile p2 = projection_body(centered_ball(g2, 1.3));
  EXPECT_LT(max_rel(p2, [](const Vec&) { return 2.6; }), 1e-10);
  const SupportProfile p3 = projection_body(centered_ball(make_shared_grid(3, 24), 0.8));
  EXPECT_LT(max_rel(p3, [](const Vec&) { return pi * 0.64; }), 1e-6);
}

TEST(Projection, SquareWithCorners) {
  auto g = make_shared_grid(2, 720);
  const SupportProfile p = projection_body(square(g));
  EXPECT_LT(max_rel(p, [](const Vec& u) { return 2.0 * (std::abs(u.x) + std::abs(u.y)); }), 1e-3);
  const StarBody pi_body = body_from_support(p);
  double d = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Vec u = g->node(i);
    d = std::max(d, std::abs(pi_body.radius(i) - 2.0 / std::max(std::abs(u.x), std::abs(u.y))));
  }
  EXPECT_LT(d, 1e-2);
}

TEST(Projection, RotatedEllipse) {
  auto g = make_shared_grid(2, 720);
  const double t = 30.0 * pi / 180.0;
  const SupportProfile p = projection_body(ellipse(g, 1.2, 0.5, 30.0));
  EXPECT_LT(max_rel(p, [&](const Vec& z) { return ellipse_pi_support(1.2, 0.5, t, z); }), 1e-7);
  const SupportProfile ref = projection_body_reference(ellipse(g, 1.2, 0.5, 30.0));
  EXPECT_LT(max_rel(ref, [&](const Vec& z) { return ellipse_pi_support(1.2, 0.5, t, z); }), 1e-4);
}

TEST(Projection, Ellipsoid3D) {
  BodySpec s;
  s.kind = "ellipsoid";
  s.dim = 3;
  s.axes = {1.0, 0.7, 0.5};
  const StarBody e = build_body(s, make_shared_grid(3, 24));
  const SupportProfile p = projection_body(e);
  // Pi of the unit ball is B(pi); Pi(A B) = |det A| A^{-T} Pi B.
  const double det = 0.35;
  const double err = max_rel(p, [&](const Vec& z) {
    return pi * det * norm(Vec{z.x / 1.0, z.y / 0.7, z.z / 0.5});
  });
  EXPECT_LT(err, 1e-3);
}

TEST(Projection, SerialMatchesParallel) {
  const StarBody e = ellipse(make_shared_grid(2, 360), 1.2, 0.5, 30.0);
  const SupportProfile a = projection_body(e, Exec::serial);
  const SupportProfile b = projection_body(e, Exec::parallel);
  for (std::size_t i = 0; i < a.values().size(); ++i) EXPECT_EQ(a.value(i), b.value(i));
}

TEST(Slice, ChordsAndEmptyLines) {
  auto g = make_shared_grid(2, 720);
  const StarBody disk = centered_ball(g, 1.0);
  const IntervalSlice s = slice(disk, {0.0, 1.0, 0.0}, {0.5, 0.0, 0.0});
  ASSERT_EQ(s.intervals.size(), 1u);
  EXPECT_NEAR(s.intervals[0].first, -std::sqrt(0.75), 1e-9);
  EXPECT_NEAR(s.intervals[0].second, std::sqrt(0.75), 1e-9);
  EXPECT_TRUE(slice(disk, {0.0, 1.0, 0.0}, {2.0, 0.0, 0.0}).intervals.empty());
  const StarBody dumbbell = StarBody::from_function(
      g, [](const Vec& u) { return 1.0 + 0.5 * (u.x * u.x - u.y * u.y); }, 0.5);
  const IntervalSlice d = slice(dumbbell, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0});
  ASSERT_EQ(d.intervals.size(), 1u);
  EXPECT_NEAR(d.intervals[0].first, -0.5, 1e-9);
  EXPECT_NEAR(d.intervals[0].second, 0.5, 1e-9);
}

TEST(Slice, ChordIndexMatchesScan) {
  auto g = make_shared_grid(2, 360);
  const StarBody b = StarBody::from_function(
      g, [](const Vec& u) { return 1.0 + 0.3 * u.x * u.y + 0.2 * u.x * u.x * u.x; });
  const Vec u = normalized(Vec{0.4, 1.0, 0.0});
  const ChordIndex idx(b, u);
  const Vec perp{-u.y, u.x, 0.0};
  for (double s = -1.3; s <= 1.3; s += 0.05)
    EXPECT_NEAR(idx.length(perp * s), slice(b, u, perp * s).total_length(), 1e-9) << s;
}

TEST(Steiner, FixedBodies) {
  auto g = make_shared_grid(2, 720);
  const StarBody disk = centered_ball(g, 0.9);
  EXPECT_LT(radial_distance(steiner(disk, normalized(Vec{1.0, 2.0, 0.0})), disk), 1e-9);
  const StarBody e = ellipse(g, 2.0, 1.0);
  EXPECT_LT(radial_distance(steiner(e, {0.0, 1.0, 0.0}), e), 1e-9);
}

TEST(Steiner, RotatedEllipseBecomesAlignedEllipse) {
  // Chord lengths of an ellipse are an elliptic profile of x1, so S_{e2}
  // of any ellipse is the aligned ellipse of the same width and area.
  auto g = make_shared_grid(2, 720);
  const StarBody e = ellipse(g, 2.0, 1.0, 45.0);
  const StarBody s = steiner(e, {0.0, 1.0, 0.0});
  const double w = ellipse_support(2.0, 1.0, pi / 4, {1.0, 0.0, 0.0});
  EXPECT_LT(radial_distance(s, ellipse(g, w, 2.0 / w)), 1e-8);
  EXPECT_NEAR(s.volume(), 2.0 * pi, 1e-8);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const std::size_t mirror = (g->size() - i) % g->size();
    EXPECT_NEAR(s.radius(i), s.radius(mirror), 1e-10);
  }
}

TEST(Steiner, PreservesVolume) {
  auto g = make_shared_grid(2, 720);
  std::mt19937_64 rng(5);
  const StarBody b = StarBody::from_function(g, [](const Vec& u) {
    return 1.0 + 0.2 * std::cos(3.0 * std::atan2(u.y, u.x)) + 0.1 * u.x;
  });
  for (int k = 0; k < 5; ++k) {
    const StarBody s = steiner(b, random_direction(rng, 2));
    EXPECT_NEAR(s.volume() / b.volume(), 1.0, 1e-6);
  }
  BodySpec spec;
  spec.kind = "ellipsoid";
  spec.dim = 3;
  spec.axes = {1.0, 0.7, 0.5};
  spec.rotation_deg = 40.0;
  spec.rotation_axis = {1.0, 1.0, 0.0};
  const StarBody e3 = build_body(spec, make_shared_grid(3, 24));
  const StarBody s3 = steiner(e3, normalized(Vec{0.2, 0.5, 1.0}));
  EXPECT_NEAR(s3.volume() / e3.volume(), 1.0, 1e-5);
}

TEST(Steiner, KernelMatchesReference) {
  auto g = make_shared_grid(2, 180);
  const StarBody e = ellipse(g, 1.2, 0.5, 30.0);
  const Vec u{0.0, 1.0, 0.0};
  EXPECT_LT(radial_distance(steiner(e, u), steiner_reference(e, u)), 1e-5);
  EXPECT_EQ(steiner(e, u, Exec::serial).radii()[17], steiner(e, u, Exec::parallel).radii()[17]);
}

TEST(Rearrangement, Radii) {
  auto g = make_shared_grid(2, 720);
  EXPECT_LT(radial_distance(rearrangement(centered_ball(g, 3.0)), centered_ball(g, 3.0)), 1e-12);
  EXPECT_NEAR(rearrangement(square(g)).radius(0), 2.0 / std::sqrt(pi), 3e-5);
  EXPECT_NEAR(rearrangement(ellipse(g, 2.0, 1.0)).radius(0), std::sqrt(2.0), 1e-10);
}

TEST(Distance, Hausdorff) {
  auto g = make_shared_grid(2, 720);
  EXPECT_NEAR(hausdorff_distance(centered_ball(g, 1.0), centered_ball(g, 1.25)), 0.25, 1e-10);
  // Square vs its inscribed disk: the corners are sqrt 2 - 1 away.
  EXPECT_NEAR(hausdorff_distance(square(g), centered_ball(g, 1.0)), std::sqrt(2.0) - 1.0, 1e-6);
  EXPECT_NEAR(radial_distance(square(g), centered_ball(g, 1.0)), std::sqrt(2.0) - 1.0, 1e-12);
  try {
    radial_distance(square(g), centered_ball(make_shared_grid(2, 360), 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::grid_mismatch);
  }
}

TEST(BodySpec, JsonRoundTrip) {
  BodySpec s;
  s.kind = "trig-radial";
  s.dim = 2;
  s.c0 = 1.1;
  s.terms.push_back({.k = 3, .amp = 0.0, .axis = {}, .cos = 0.1, .sin = -0.05, .planar = true});
  s.chart = "gnomonic";
  s.delta_pole = 0.07;
  const BodySpec back = body_spec_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
  auto g = make_shared_grid(2, 360);
  EXPECT_EQ(build_body(back, g).radii()[10], build_body(s, g).radii()[10]);
  EXPECT_THROW(body_spec_from_json(nlohmann::json{{"kind", "teapot"}, {"dim", 2}}), Error);
}

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "petty/core/error.hpp"
#include "petty/experiments/corpus.hpp"
#include "petty/experiments/experiment.hpp"
#include "petty/hyperbolic/hyperbolic.hpp"
#include "petty/spherical/spherical.hpp"
#include "petty/starbody/distance.hpp"
#include "petty/starbody/support.hpp"

using namespace petty;
constexpr double pi = std::numbers::pi;

namespace {

std::string csv_of(const RunReport& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

ExperimentConfig config_for(Geometry g, const BodySpec& body, int iterations, int resolution = 360) {
  ExperimentConfig c;
  c.geometry = g;
  c.body = body;
  c.resolution = resolution;
  c.random_directions = iterations;
  c.seed = 5;
  return c;
}

}  // namespace

TEST(Corpus, CapFamily) {
  FamilyParams p;
  p.family = "cap";
  p.radii = {0.3, 0.5, 0.7};
  const auto caps = generate_corpus(7, 3, Geometry::spherical, p);
  ASSERT_EQ(caps.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(caps[i].kind, "ball");
    EXPECT_EQ(caps[i].chart, "gnomonic");
    EXPECT_DOUBLE_EQ(*caps[i].angular_radius, p.radii[i]);
  }
  auto g = make_shared_grid(2, 90);
  EXPECT_NEAR(SphericalBody::from_spec(caps[1], g).measure(), cap_measure(2, 0.5), 1e-10);
  const auto balls = generate_corpus(7, 3, Geometry::hyperbolic, p);
  EXPECT_NEAR(HyperbolicBody::from_spec(balls[0], g).chart().radius(3), std::sinh(0.3), 1e-12);
  EXPECT_THROW(generate_corpus(7, 2, Geometry::spherical, p), Error);
}

TEST(Corpus, TrigRadialBodiesAreAdmissibleAndConvex) {
  auto g = make_shared_grid(2, 360);
  for (Geometry geo : {Geometry::euclidean, Geometry::spherical, Geometry::hyperbolic}) {
    const auto corpus = generate_corpus(7, 50, geo, FamilyParams{});
    ASSERT_EQ(corpus.size(), 50u);
    for (const BodySpec& s : corpus) {
      const StarBody chart = build_body(s, g);
      EXPECT_GE(chart.min_radius(), 0.1);
      if (geo == Geometry::spherical) {
        EXPECT_NO_THROW(spherical_projection_body(SphericalBody::from_spec(s, g)));
      } else if (geo == Geometry::hyperbolic) {
        EXPECT_NO_THROW(hyperbolic_projection_body(HyperbolicBody::from_spec(s, g)));
      }
    }
    // Convexity witness: the double polar is the convex hull.
    for (int i = 0; i < 50; i += 7) {
      const StarBody k = build_body(corpus[i], g);
      EXPECT_LT(radial_distance(polar(polar(k)), k) / k.max_radius(), 1e-5);
    }
  }
}

TEST(Corpus, ThreeDimensionalAndEllipsoids) {
  FamilyParams p;
  p.dim = 3;
  auto g = make_shared_grid(3, 12);
  for (const BodySpec& s : generate_corpus(3, 10, Geometry::hyperbolic, p)) {
    EXPECT_EQ(s.dim, 3);
    EXPECT_NO_THROW(HyperbolicBody::from_spec(s, g));
  }
  p.family = "ellipsoid";
  for (const BodySpec& s : generate_corpus(3, 10, Geometry::spherical, p))
    EXPECT_NO_THROW(SphericalBody::from_spec(s, g));
}

TEST(Corpus, DeterministicAndRoundTrips) {
  const auto a = corpus_to_json(generate_corpus(7, 50, Geometry::spherical, FamilyParams{})).dump();
  const auto b = corpus_to_json(generate_corpus(7, 50, Geometry::spherical, FamilyParams{})).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, corpus_to_json(generate_corpus(8, 50, Geometry::spherical, FamilyParams{})).dump());
  EXPECT_EQ(corpus_to_json(corpus_from_json(nlohmann::json::parse(a))).dump(), a);
}

TEST(Corpus, InfeasibleParameters) {
  FamilyParams p;
  p.r_in_floor = 5.0;
  EXPECT_THROW(generate_corpus(1, 3, Geometry::spherical, p), Error);
  p = {};
  p.anisotropy = 1.5;
  EXPECT_THROW(generate_corpus(1, 3, Geometry::euclidean, p), Error);
  p = {};
  p.family = "cap";
  p.radii = {1.5};
  EXPECT_THROW(generate_corpus(1, 1, Geometry::spherical, p), Error);
}

TEST(Euclidean, PolarProjectionVolumeOfBall) {
  auto g = make_shared_grid(2, 360);
  // Pi B(r) = B(2r) in the plane, so vol(Pi* B(r)) = pi / (4 r^2).
  EXPECT_NEAR(euclidean_polar_projection_volume(centered_ball(g, 0.8)) / (pi / (4.0 * 0.64)), 1.0, 1e-9);
  EXPECT_NEAR(rearrangement_polar_measure(Geometry::euclidean, 2, 0.8), pi / (4.0 * 0.64), 1e-14);
  const ChainReport c = euclidean_chain(centered_ball(g, 0.8), 1e-9, 1e-6);
  EXPECT_TRUE(c.endpoint_equal);
  EXPECT_NEAR(c.finv_body, 1.6, 1e-9);  // omega_1 r
}

TEST(Calibration, SmallAndPositive) {
  for (Geometry geo : {Geometry::euclidean, Geometry::spherical, Geometry::hyperbolic}) {
    const double eps = calibrate_eps_quad(geo, 2, 360);
    EXPECT_GT(eps, 0.0);
    EXPECT_LT(eps, 1e-6);
    EXPECT_EQ(eps, calibrate_eps_quad(geo, 2, 360));
  }
}

TEST(RunExperiment, CapPassesWithEquality) {
  FamilyParams p;
  p.family = "cap";
  p.radii = {0.5};
  const RunReport r = run_experiment(config_for(Geometry::spherical, generate_corpus(7, 1, Geometry::spherical, p)[0], 6));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.petty.equality);
  EXPECT_TRUE(r.eps_calibrated);
  for (const auto& row : r.petty.iterates) EXPECT_NEAR(row.polar_proj_measure / r.petty.lhs, 1.0, 1e-6);
}

TEST(RunExperiment, RotatedEllipseHasStrictMargin) {
  BodySpec e;
  e.kind = "ellipsoid";
  e.axes = {1.2, 0.5};
  e.rotation_deg = 30.0;
  e.chart = "gnomonic";
  const RunReport r = run_experiment(config_for(Geometry::spherical, e, 8));
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.petty.equality);
  EXPECT_GT(r.petty.margin, 10.0 * r.eps_quad);
  EXPECT_TRUE(r.measure_preserved);
  for (std::size_t i = 1; i < r.petty.iterates.size(); ++i)
    EXPECT_GE(r.petty.iterates[i].polar_proj_measure, r.petty.iterates[i - 1].polar_proj_measure - r.eps_quad);
}

TEST(RunExperiment, ZeroSlackExposesQuadratureNoise) {
  FamilyParams p;
  p.family = "cap";
  p.radii = {0.5};
  ExperimentConfig c = config_for(Geometry::spherical, generate_corpus(7, 1, Geometry::spherical, p)[0], 20);
  c.eps_quad = 0.0;
  const RunReport r = run_experiment(c);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.petty.violations, 0);
  EXPECT_LT(r.petty.worst_decrease, 1e-12);
}

TEST(RunExperiment, CsvFormatAndDeterminism) {
  const auto corpus = generate_corpus(4, 1, Geometry::hyperbolic, FamilyParams{});
  const ExperimentConfig c = config_for(Geometry::hyperbolic, corpus[0], 7);
  const std::string csv = csv_of(run_experiment(c));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,dir_1,dir_2,r_K,measure,polar_proj_measure,dist_to_star");
  EXPECT_EQ(line_count(csv), 1 + 8);
  EXPECT_EQ(csv, csv_of(run_experiment(c)));
  EXPECT_EQ(csv_header(3), "iter,dir_1,dir_2,dir_3,r_K,measure,polar_proj_measure,dist_to_star");
}

TEST(RunExperiment, KernelErrorsAreRecorded) {
  BodySpec big;
  big.kind = "ball";
  big.angular_radius = 1.55;
  big.chart = "gnomonic";
  const RunReport r = run_experiment(config_for(Geometry::spherical, big, 3));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ(r.failed_iterate, 0);
  EXPECT_NE(r.error->find("body too large"), std::string::npos);

  // Pi_S of this cap leaves the pole margin, but the verify loop only needs
  // its support function, which stays finite.
  big.angular_radius = 1.5;
  EXPECT_TRUE(run_experiment(config_for(Geometry::spherical, big, 2)).pass);
}

TEST(ExperimentConfig, ValidationAndJson) {
  ExperimentConfig c;
  c.body.dim = 2;
  c.directions = {{1.0, 1.0, 0.0}, {0.0, 2.0, 0.0}};
  c.eps_quad = 1e-9;
  const ExperimentConfig back = experiment_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  const auto sched = make_schedule(back);
  ASSERT_EQ(sched.size(), 2u);
  EXPECT_NEAR(sched[0].x, std::sqrt(0.5), 1e-15);

  ExperimentConfig bad = c;
  bad.eps_quad = -1.0;
  EXPECT_THROW(validate(bad), Error);
  bad = c;
  bad.directions.clear();
  bad.random_directions = 0;
  EXPECT_THROW(validate(bad), Error);
  bad = c;
  bad.directions = {{0.0, 0.0, 1.0}};
  EXPECT_THROW(validate(bad), Error);
}

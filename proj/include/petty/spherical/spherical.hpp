#pragma once

#include <optional>

#include "petty/core/exec.hpp"
#include "petty/core/vec.hpp"
#include "petty/starbody/distance.hpp"
#include "petty/starbody/report.hpp"
#include "petty/starbody/star_body.hpp"
#include "petty/starbody/steiner.hpp"
#include "petty/starbody/support.hpp"

namespace petty {

struct BodySpec;

// Point of the upper hemisphere S^n_+ in R^{n+1}: `horizontal` holds the
// first n coordinates, `vertical` the e_{n+1} one.
struct SpherePoint {
  Vec horizontal;
  double vertical = 1.0;
};

// g(v) = v / (e . v) - e. Throws Error(outside_domain) for v on or below the
// equator.
Vec gnomonic(const SpherePoint& v);
SpherePoint gnomonic_inverse(const Vec& x);

// M_s(K) = int_K (1 + |x|^2)^{-(n+1)/2} dx on a chart body, i.e. the
// H^n-measure of its preimage on the sphere.
double spherical_measure(const StarBody& chart, Exec exec = default_exec());

// H^n of the cap B_s(alpha) in S^n (n = 2, 3), closed form.
double cap_measure(int n, double alpha);

// K subset S^n_+ stored as its gnomonic image. The chart must stay clear of
// the equator: max rho <= tan(pi/2 - delta_pole), else Error(body_too_large).
class SphericalBody {
 public:
  explicit SphericalBody(StarBody chart, double delta_pole = 0.05);
  static SphericalBody cap(const GridPtr& grid, double alpha, double delta_pole = 0.05);
  // Spec radii are read as chart radii (chart = "gnomonic" or "euclidean").
  static SphericalBody from_spec(const BodySpec& spec, const GridPtr& grid);

  int dim() const { return chart_.dim(); }
  const StarBody& chart() const { return chart_; }
  double measure() const { return measure_; }
  double delta_pole() const { return delta_pole_; }
  // tan rho_s(K, v) = rho_chart(v).
  double spherical_radius(const Vec& v) const;

 private:
  StarBody chart_;
  double measure_ = 0.0;
  double delta_pole_ = 0.05;
};

// -K°, represented on the chart as -(chart K)^*; the involution K -> -K°
// satisfies rho_s(-K°, -v) = pi/2 - h_s(K, v). Throws Error(body_too_large)
// when the chart support reaches tan(pi/2 - delta_pole).
SphericalBody spherical_polar(const SphericalBody& body, Exec exec = default_exec());

struct SphericalSteinerResult {
  SphericalBody body;
  double r_k = 1.0;
  bool clamped = false;  // root fell in (1, 1 + eps_clamp] and was set to 1
};

// g^{-1} of the chart Steiner symmetral whose every slice along u is scaled
// by r_K, with r_K chosen so that the spherical measure is unchanged
// (residual below 1e-10). Throws Error(bracket_failure) if no root lies in
// [1e-6, 1 + steiner_clamp].
SphericalSteinerResult spherical_steiner(const SphericalBody& body, const Vec& u,
                                         Exec exec = default_exec());

// Support function of the chart of the spherical projection body:
// tan h_s(Pi_S K, u) = 1/2 int_{boundary g(K)} |u . nu|.
SupportProfile spherical_projection_support(const SphericalBody& body, Exec exec = default_exec());
// Pi_S K itself. Throws Error(body_too_large) when its support reaches
// tan(pi/2 - delta_pole).
SphericalBody spherical_projection_body(const SphericalBody& body, Exec exec = default_exec());

// H^n(Pi°_S K) = int_{S^{n-1}} F(h(v)) dv with the spherical profile F.
double polar_projection_volume(const SphericalBody& body, Exec exec = default_exec());
double polar_projection_volume(const SupportProfile& h);

// Cap of the same measure. Throws Error(out_of_range) if the measure is not
// below that of the hemisphere.
SphericalBody cap_rearrangement(const SphericalBody& body);
// Angular radius of that cap.
double cap_radius_for_measure(int n, double measure);

// Geodesic distance on S^n between preimages of chart points.
class SphericalMetric final : public ChartMetric {
 public:
  Point embed(const Vec& chart_point) const override;
  double distance(const Point& a, const Point& b) const override;
};

double spherical_hausdorff(const SphericalBody& a, const SphericalBody& b,
                           Exec exec = default_exec());

// Iterates the spherical Steiner symmetrization along `schedule`, tracking
// the polar projection measure, and checks the inequality and the perimeter
// chain against the cap rearrangement.
PettyReport verify_spherical_petty(const SphericalBody& body, const std::vector<Vec>& schedule,
                                   const VerifyOptions& options = {});

// Perimeter chain alone (no iteration).
ChainReport spherical_chain(const SphericalBody& body, double eps, double equality_band);

}  // namespace petty

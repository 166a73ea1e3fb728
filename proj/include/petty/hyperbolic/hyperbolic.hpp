#pragma once

#include "petty/core/exec.hpp"
#include "petty/core/vec.hpp"
#include "petty/starbody/distance.hpp"
#include "petty/starbody/report.hpp"
#include "petty/starbody/star_body.hpp"
#include "petty/starbody/support.hpp"

namespace petty {

struct BodySpec;

// y = 2x / (1 - |x|^2) from the Poincare ball onto R^n, and its inverse
// x = y / (1 + sqrt(1 + |y|^2)). phi throws Error(outside_domain) for |x| >= 1.
Vec phi(const Vec& x);
Vec phi_inverse(const Vec& y);
double phi_radius(double disk_radius);
double phi_inverse_radius(double chart_radius);

// mu_n(K) = int_{chart} (1 + |y|^2)^{-1/2} dy.
double mu_measure(const StarBody& chart, Exec exec = default_exec());
// Same measure from the Poincare-ball side: 2^n int int r^{n-1} (1 - r^2)^{-n}.
double mu_measure_disk(const StarBody& disk, Exec exec = default_exec());
// mu_n of the hyperbolic ball whose Phi-chart is B(c), closed form (n = 2, 3).
double ball_measure_chart(int n, double c);

// K subset H^n, held both as the Poincare-ball body P(K) and as its chart
// Phi_p(K), node-wise consistent. The disk body must keep
// max rho <= 1 - delta_disk, else Error(body_too_large).
class HyperbolicBody {
 public:
  static HyperbolicBody from_chart(StarBody chart, double delta_disk = 0.02);
  static HyperbolicBody from_disk(const StarBody& disk, double delta_disk = 0.02);
  // Hyperbolic ball whose Poincare radius is `disk_radius`.
  static HyperbolicBody ball(const GridPtr& grid, double disk_radius, double delta_disk = 0.02);
  // chart = "poincare": radii describe P(K); "phi" or "euclidean": Phi_p(K).
  static HyperbolicBody from_spec(const BodySpec& spec, const GridPtr& grid);

  int dim() const { return chart_.dim(); }
  const StarBody& chart() const { return chart_; }
  const StarBody& disk() const { return disk_; }
  double measure() const { return measure_; }
  double delta_disk() const { return delta_disk_; }

 private:
  HyperbolicBody(StarBody chart, StarBody disk, double delta_disk);
  StarBody chart_;
  StarBody disk_;
  double measure_ = 0.0;
  double delta_disk_ = 0.02;
};

// K° = Phi_p^{-1}((Phi_p K)^*).
HyperbolicBody hyperbolic_polar(const HyperbolicBody& body, Exec exec = default_exec());

struct HyperbolicSteinerResult {
  HyperbolicBody body;
  double r_k = 1.0;
  bool clamped = false;
};

// Phi_p^{-1}(r_K S_u Phi_p(K)) with the global factor r_K fixed by
// mu_n-preservation (relative residual below 1e-12). Same bracket and
// clamp policy as the spherical version.
HyperbolicSteinerResult hyperbolic_steiner(const HyperbolicBody& body, const Vec& u,
                                           Exec exec = default_exec());

// Support function of Pi(Phi_p K) = Phi_p(Pi_h K).
SupportProfile hyperbolic_projection_support(const HyperbolicBody& body, Exec exec = default_exec());
// Pi_h K, with the chart recovered from the support function by the double polar.
HyperbolicBody hyperbolic_projection_body(const HyperbolicBody& body, Exec exec = default_exec());

// mu_n(Pi°_H K) = int_{S^{n-1}} int_0^{1/h(u)} r^{n-1} (1 + r^2)^{-1/2} dr du.
double polar_projection_measure(const HyperbolicBody& body, Exec exec = default_exec());
double polar_projection_measure(const SupportProfile& h, Exec exec = default_exec());

// Hyperbolic ball of the same mu_n.
HyperbolicBody ball_rearrangement(const HyperbolicBody& body);
// Chart radius c with ball_measure_chart(n, c) = measure.
double ball_chart_radius_for_measure(int n, double measure);

// Poincare geodesic distance between Phi^{-1} of chart points.
class PoincareMetric final : public ChartMetric {
 public:
  Point embed(const Vec& chart_point) const override;
  double distance(const Point& a, const Point& b) const override;
};

double hyperbolic_hausdorff(const HyperbolicBody& a, const HyperbolicBody& b,
                            Exec exec = default_exec());

PettyReport verify_hyperbolic_petty(const HyperbolicBody& body, const std::vector<Vec>& schedule,
                                    const VerifyOptions& options = {});

ChainReport hyperbolic_chain(const HyperbolicBody& body, double eps, double equality_band);

}  // namespace petty

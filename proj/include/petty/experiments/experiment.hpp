#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "petty/core/vec.hpp"
#include "petty/experiments/corpus.hpp"
#include "petty/starbody/body_spec.hpp"
#include "petty/starbody/report.hpp"
#include "petty/starbody/star_body.hpp"
#include "petty/starbody/support.hpp"

namespace petty {

struct ExperimentConfig {
  Geometry geometry = Geometry::spherical;
  BodySpec body;
  std::string body_path;          // where the body came from, echoed in the summary
  int resolution = 720;           // n = 2: nodes on the circle; n = 3: latitude rings
  std::vector<Vec> directions;    // explicit schedule; overrides random_directions
  int random_directions = 20;     // uniform on S^{n-1}, drawn from seed
  std::uint64_t seed = 1;
  std::optional<double> eps_quad; // unset: calibrated for (geometry, n, resolution)
  double root_tol = 1e-8;         // allowed relative drift of the body measure
  double equality_band = 1e-6;
  int distance_every = 1;         // 0: first and last iterate only
  int polar_every = 1;            // same for the polar projection measure
  std::string csv_path;
  std::string json_path;
};

// Throws Error(out_of_range) on negative tolerances or an empty schedule.
// eps_quad = 0 is accepted: it turns every quadrature-level decrease into a
// reported violation.
void validate(const ExperimentConfig& config);
std::vector<Vec> make_schedule(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
// Missing keys keep their defaults; "body" is an inline spec or a path.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct RunReport {
  ExperimentConfig config;
  double eps_quad = 0.0;
  bool eps_calibrated = false;
  PettyReport petty;
  bool measure_preserved = false;  // max drift <= root_tol
  bool monotone = false;           // no polar-measure decrease beyond eps_quad
  bool pass = false;               // both of the above, the inequality and the chain links
  std::optional<std::string> error;
  int failed_iterate = -1;         // iterate whose computation raised `error`
};

// Runs the geometry's verify loop and writes the CSV / JSON outputs named in
// the config. Kernel errors do not throw; they end the run with `error` and
// `failed_iterate` set and pass = false.
RunReport run_experiment(const ExperimentConfig& config);

// Ten times the largest residual of the cap / ball equality case at this
// resolution: numeric polar-projection measure against its closed form, and
// its drift over a few Steiner steps. Cached per (geometry, n, resolution).
double calibrate_eps_quad(Geometry geometry, int dim, int resolution);

// Closed-form polar-projection measure of the centered cap / ball whose chart
// radius is c.
double rearrangement_polar_measure(Geometry geometry, int dim, double chart_radius);

// Euclidean counterparts of the verify loop: vol(Pi* K) = (1/n) int h^{-n},
// with the ball of equal volume as rearrangement and F(t) = t^{-n} / n in
// the chain.
double euclidean_polar_projection_volume(const SupportProfile& h);
double euclidean_polar_projection_volume(const StarBody& body);
PettyReport verify_euclidean_petty(const StarBody& body, const std::vector<Vec>& schedule,
                                   const VerifyOptions& options = {});
ChainReport euclidean_chain(const StarBody& body, double eps, double equality_band);

// Chain for a spec in any geometry.
ChainReport isoperimetric_chain(Geometry geometry, const BodySpec& spec, int resolution, double eps,
                                double equality_band);

// iter,dir_1..dir_n,r_K,measure,polar_proj_measure,dist_to_star
std::string csv_header(int dim);
void write_csv(const RunReport& report, std::ostream& out);
nlohmann::json summary_json(const RunReport& report);
void emit(const RunReport& report, const std::string& csv_path, const std::string& json_path);

}  // namespace petty

#include "petty/experiments/experiment.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include <fmt/format.h>

#include "petty/core/error.hpp"
#include "petty/core/grid.hpp"
#include "petty/core/profile.hpp"
#include "petty/core/quadrature.hpp"
#include "petty/core/sampling.hpp"
#include "petty/hyperbolic/hyperbolic.hpp"
#include "petty/spherical/spherical.hpp"
#include "petty/starbody/distance.hpp"
#include "petty/starbody/normals.hpp"
#include "petty/starbody/projection.hpp"
#include "petty/starbody/steiner.hpp"
#include "petty/starbody/verify_loop.hpp"

namespace petty {

namespace {

struct EuclideanStep {
  StarBody body;
  double r_k = 1.0;
  bool clamped = false;
};

double c0_constant(int n) { return unit_ball_volume(n - 1) / (n * unit_ball_volume(n)); }

nlohmann::json vec_json(const Vec& v, int dim) {
  return dim == 2 ? nlohmann::json::array({v.x, v.y}) : nlohmann::json::array({v.x, v.y, v.z});
}

Vec json_vec(const nlohmann::json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3)
    throw Error(Errc::out_of_range, "directions are arrays of 2 or 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
}

// Shortest representation that reads back to the same double; NaN as an
// empty field.
std::string num(double x) { return std::isnan(x) ? std::string() : fmt::format("{}", x); }

nlohmann::json num_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

nlohmann::json chain_json(const ChainReport& c) {
  return {{"perimeter_star", c.perimeter_star}, {"finv_star", c.finv_star},
          {"finv_body", c.finv_body},           {"perimeter_body", c.perimeter_body},
          {"endpoint_equal", c.endpoint_equal}, {"middle_holds", c.middle_holds},
          {"upper_holds", c.upper_holds}};
}

// Largest deviation of the polar-projection measure of the cap / ball of
// chart radius c from its closed form, and from itself after Steiner steps.
template <class Body, class Make, class Step, class Polar>
double probe_residual(Geometry g, int dim, double c, const std::vector<Vec>& steps, Make make, Step step,
                      Polar polar) {
  Body body = make(c);
  const double first = polar(body);
  double residual = std::abs(first - rearrangement_polar_measure(g, dim, c));
  for (const Vec& u : steps) {
    body = step(body, u);
    residual = std::max(residual, std::abs(polar(body) - first));
  }
  return residual;
}

// F(t) = t^{-n} / n, so F^{-1}(m) = (n m)^{-1/n}.
ChainReport euclidean_chain_from(const StarBody& body, const StarBody& star, double polar_star, double polar_body,
                                 double eps, double equality_band) {
  const int n = body.dim();
  const double sphere = n * unit_ball_volume(n);
  auto finv = [n](double m) { return std::pow(n * m, -1.0 / n); };
  return detail::chain_from_values(c0_constant(n) * perimeter(star), finv(polar_star / sphere),
                                   finv(polar_body / sphere), c0_constant(n) * perimeter(body), eps, equality_band);
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.body.dim != 2 && c.body.dim != 3) throw Error(Errc::unsupported_dimension, "body dim must be 2 or 3");
  if (c.eps_quad && !(*c.eps_quad >= 0.0)) throw Error(Errc::out_of_range, "eps_quad must be >= 0");
  if (!(c.root_tol > 0.0)) throw Error(Errc::out_of_range, "root_tol must be positive");
  if (!(c.equality_band > 0.0)) throw Error(Errc::out_of_range, "equality_band must be positive");
  if (c.distance_every < 0 || c.polar_every < 0)
    throw Error(Errc::out_of_range, "distance_every and polar_every must be >= 0");
  if (c.directions.empty() && c.random_directions < 1)
    throw Error(Errc::out_of_range, "the direction schedule is empty");
  for (const Vec& u : c.directions) {
    if (!(norm(u) > 0.0)) throw Error(Errc::out_of_range, "zero direction in schedule");
    if (c.body.dim == 2 && u.z != 0.0) throw Error(Errc::out_of_range, "planar schedule has a z component");
  }
}

std::vector<Vec> make_schedule(const ExperimentConfig& c) {
  std::vector<Vec> out;
  if (!c.directions.empty()) {
    for (const Vec& u : c.directions) out.push_back(normalized(u));
    return out;
  }
  std::mt19937_64 rng(c.seed);
  for (int i = 0; i < c.random_directions; ++i) out.push_back(random_direction(rng, c.body.dim));
  return out;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["geometry"] = geometry_name(c.geometry);
  j["body"] = to_json(c.body);
  if (!c.body_path.empty()) j["body_path"] = c.body_path;
  j["resolution"] = c.resolution;
  if (!c.directions.empty()) {
    auto d = nlohmann::json::array();
    for (const Vec& u : c.directions) d.push_back(vec_json(u, c.body.dim));
    j["directions"] = d;
  } else {
    j["iterations"] = c.random_directions;
  }
  j["seed"] = c.seed;
  if (c.eps_quad) j["eps_quad"] = *c.eps_quad;
  j["root_tol"] = c.root_tol;
  j["equality_band"] = c.equality_band;
  j["distance_every"] = c.distance_every;
  j["polar_every"] = c.polar_every;
  if (!c.csv_path.empty()) j["csv"] = c.csv_path;
  if (!c.json_path.empty()) j["json"] = c.json_path;
  return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    c.geometry = parse_geometry(j.value("geometry", std::string("spherical")));
    if (j.contains("body")) {
      if (j["body"].is_string()) {
        c.body_path = j["body"].get<std::string>();
        c.body = load_body_spec(c.body_path);
      } else {
        c.body = body_spec_from_json(j["body"]);
      }
    }
    c.resolution = j.value("resolution", c.resolution);
    if (j.contains("directions"))
      for (const auto& d : j["directions"]) c.directions.push_back(json_vec(d));
    c.random_directions = j.value("iterations", c.random_directions);
    c.seed = j.value("seed", c.seed);
    if (j.contains("eps_quad")) c.eps_quad = j["eps_quad"].get<double>();
    c.root_tol = j.value("root_tol", c.root_tol);
    c.equality_band = j.value("equality_band", c.equality_band);
    c.distance_every = j.value("distance_every", c.distance_every);
    c.polar_every = j.value("polar_every", c.polar_every);
    c.csv_path = j.value("csv", std::string());
    c.json_path = j.value("json", std::string());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::out_of_range, std::string("experiment config: ") + e.what());
  }
}

double rearrangement_polar_measure(Geometry g, int n, double c) {
  const double h = unit_ball_volume(n - 1) * std::pow(c, n - 1);
  const double sphere = n * unit_ball_volume(n);
  switch (g) {
    case Geometry::spherical: return sphere * spherical_profile(n)(h);
    case Geometry::hyperbolic: return sphere * hyperbolic_profile(n)(h);
    default: return unit_ball_volume(n) * std::pow(h, -n);
  }
}

double calibrate_eps_quad(Geometry g, int dim, int resolution) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, double> cache;
  const auto key = std::make_tuple(static_cast<int>(g), dim, resolution);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const GridPtr grid = make_shared_grid(dim, resolution);
  // Chart radii of the probes; 3D projections are costly, so one probe there.
  std::vector<double> sizes = dim == 2 ? std::vector<double>{0.3, 0.6, 0.9} : std::vector<double>{0.6};
  std::mt19937_64 rng(0x5eed);
  std::vector<Vec> steps;
  for (int i = 0; i < (dim == 2 ? 3 : 1); ++i) steps.push_back(random_direction(rng, dim));

  double residual = 0.0, scale = 0.0;
  for (double c : sizes) {
    scale = std::max(scale, rearrangement_polar_measure(g, dim, c));
    switch (g) {
      case Geometry::spherical:
        residual = std::max(residual, probe_residual<SphericalBody>(
                                          g, dim, c, steps,
                                          [&](double r) { return SphericalBody(centered_ball(grid, r)); },
                                          [](const SphericalBody& k, const Vec& u) { return spherical_steiner(k, u).body; },
                                          [](const SphericalBody& k) { return polar_projection_volume(k); }));
        break;
      case Geometry::hyperbolic:
        residual = std::max(residual, probe_residual<HyperbolicBody>(
                                          g, dim, c, steps,
                                          [&](double r) { return HyperbolicBody::from_chart(centered_ball(grid, r)); },
                                          [](const HyperbolicBody& k, const Vec& u) { return hyperbolic_steiner(k, u).body; },
                                          [](const HyperbolicBody& k) { return polar_projection_measure(k); }));
        break;
      case Geometry::euclidean:
        residual = std::max(residual, probe_residual<StarBody>(
                                          g, dim, c, steps, [&](double r) { return centered_ball(grid, r); },
                                          [](const StarBody& k, const Vec& u) { return steiner(k, u); },
                                          [](const StarBody& k) { return euclidean_polar_projection_volume(k); }));
        break;
    }
  }
  const double eps = 10.0 * std::max(residual, 4.0 * DBL_EPSILON * scale);
  std::lock_guard lock(mutex);
  cache[key] = eps;
  return eps;
}

double euclidean_polar_projection_volume(const SupportProfile& h) {
  const int n = h.dim();
  std::vector<double> v(h.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(h.value(i), -n) / n;
  return integrate_samples(h.grid(), v);
}

double euclidean_polar_projection_volume(const StarBody& body) {
  return euclidean_polar_projection_volume(projection_body(body));
}

ChainReport euclidean_chain(const StarBody& body, double eps, double equality_band) {
  const StarBody star = rearrangement(body);
  return euclidean_chain_from(body, star, euclidean_polar_projection_volume(star),
                              euclidean_polar_projection_volume(body), eps, equality_band);
}

PettyReport verify_euclidean_petty(const StarBody& body, const std::vector<Vec>& schedule,
                                   const VerifyOptions& options) {
  const StarBody star = rearrangement(body);
  PettyReport rep = detail::run_petty(
      body, star, schedule, options,
      [](const StarBody& k, const Vec& u) { return EuclideanStep{steiner(k, u)}; },
      [](const StarBody& k) { return k.volume(); },
      [](const StarBody& k) { return euclidean_polar_projection_volume(k); },
      [](const StarBody& a, const StarBody& b) { return hausdorff_distance(a, b); });
  rep.geometry = "euclidean";
  rep.chain = euclidean_chain_from(body, star, rep.rhs, rep.lhs, options.eps_quad, options.equality_band);
  return rep;
}

ChainReport isoperimetric_chain(Geometry g, const BodySpec& spec, int resolution, double eps,
                                double equality_band) {
  const GridPtr grid = make_shared_grid(spec.dim, resolution);
  switch (g) {
    case Geometry::spherical: return spherical_chain(SphericalBody::from_spec(spec, grid), eps, equality_band);
    case Geometry::hyperbolic: return hyperbolic_chain(HyperbolicBody::from_spec(spec, grid), eps, equality_band);
    default:
      if (spec.chart != "euclidean") throw Error(Errc::invalid_body, "euclidean body needs chart = euclidean");
      return euclidean_chain(build_body(spec, grid), eps, equality_band);
  }
}

RunReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  RunReport rep;
  rep.config = config;
  const int n = config.body.dim;
  const std::vector<Vec> schedule = make_schedule(config);
  try {
    rep.eps_calibrated = !config.eps_quad;
    rep.eps_quad = config.eps_quad ? *config.eps_quad : calibrate_eps_quad(config.geometry, n, config.resolution);
    const VerifyOptions options{rep.eps_quad, config.equality_band, config.distance_every, config.polar_every};
    const GridPtr grid = make_shared_grid(n, config.resolution);
    try {
      switch (config.geometry) {
        case Geometry::spherical:
          rep.petty = verify_spherical_petty(SphericalBody::from_spec(config.body, grid), schedule, options);
          break;
        case Geometry::hyperbolic:
          rep.petty = verify_hyperbolic_petty(HyperbolicBody::from_spec(config.body, grid), schedule, options);
          break;
        case Geometry::euclidean:
          if (config.body.chart != "euclidean")
            throw Error(Errc::invalid_body, "euclidean body needs chart = euclidean");
          rep.petty = verify_euclidean_petty(build_body(config.body, grid), schedule, options);
          break;
      }
    } catch (const IterationError& e) {
      rep.failed_iterate = e.iterate();
      throw;
    }
    rep.measure_preserved = rep.petty.max_measure_drift <= config.root_tol;
    rep.monotone = rep.petty.violations == 0;
    rep.pass = rep.petty.inequality_holds && rep.measure_preserved && rep.monotone && rep.petty.chain.middle_holds &&
               rep.petty.chain.upper_holds;
  } catch (const Error& e) {
    rep.error = e.what();
    if (rep.failed_iterate < 0) rep.failed_iterate = 0;
    rep.pass = false;
  }
  emit(rep, config.csv_path, config.json_path);
  return rep;
}

std::string csv_header(int dim) {
  std::string h = "iter";
  for (int k = 1; k <= dim; ++k) h += ",dir_" + std::to_string(k);
  return h + ",r_K,measure,polar_proj_measure,dist_to_star";
}

void write_csv(const RunReport& report, std::ostream& out) {
  const int n = report.config.body.dim;
  out << csv_header(n) << '\n';
  for (const IterateRecord& r : report.petty.iterates) {
    out << r.iter;
    for (int k = 0; k < n; ++k) out << ',' << (r.iter == 0 ? std::string() : num(r.direction[k]));
    out << ',' << num(r.r_k) << ',' << num(r.measure) << ',' << num(r.polar_proj_measure) << ','
        << num(r.dist_to_star) << '\n';
  }
}

nlohmann::json summary_json(const RunReport& report) {
  const PettyReport& p = report.petty;
  nlohmann::json j;
  j["config"] = to_json(report.config);
  j["eps_quad"] = report.eps_quad;
  j["eps_quad_calibrated"] = report.eps_calibrated;
  j["iterations"] = p.iterates.empty() ? 0 : static_cast<int>(p.iterates.size()) - 1;
  j["lhs"] = p.lhs;
  j["rhs"] = p.rhs;
  j["margin"] = p.margin;
  j["inequality_holds"] = p.inequality_holds;
  j["equality"] = p.equality;
  j["violations"] = p.violations;
  j["worst_decrease"] = p.worst_decrease;
  j["max_measure_drift"] = p.max_measure_drift;
  j["measure_preserved"] = report.measure_preserved;
  j["monotone"] = report.monotone;
  j["initial_distance"] = num_or_null(p.initial_distance);
  j["final_distance"] = num_or_null(p.final_distance);
  j["clamped_steps"] = std::count_if(p.iterates.begin(), p.iterates.end(), [](const auto& r) { return r.clamped; });
  j["chain"] = chain_json(p.chain);
  j["pass"] = report.pass;
  if (report.error) {
    j["error"] = *report.error;
    j["failed_iterate"] = report.failed_iterate;
  }
  j["seconds"] = p.seconds;
  return j;
}

void emit(const RunReport& report, const std::string& csv_path, const std::string& json_path) {
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw Error(Errc::io, "cannot write '" + csv_path + "'");
    write_csv(report, out);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error(Errc::io, "cannot write '" + json_path + "'");
    out << summary_json(report).dump(2) << '\n';
  }
}

}  // namespace petty

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "petty/starbody/body_spec.hpp"

namespace petty {

enum class Geometry { euclidean, spherical, hyperbolic };

Geometry parse_geometry(std::string_view name);
const char* geometry_name(Geometry g);

// Chart marker the corpus writes for each geometry: euclidean, gnomonic, phi.
const char* default_chart(Geometry g);

struct FamilyParams {
  std::string family = "trig-radial";  // cap | trig-radial | ellipsoid
  int dim = 2;
  int max_degree = 4;                 // trig-radial: terms k = 1..degree
  // cap: one body per entry. Angular radius (spherical), geodesic radius
  // (hyperbolic) or plain radius (euclidean). Empty: drawn at random.
  std::vector<double> radii;
  double r_in_floor = 0.1;   // lower bound on the chart radial function
  // trig-radial: sum (1 + k^2) |a_k| <= anisotropy * c0 keeps the body convex.
  double anisotropy = 0.85;
};

// Deterministic in (seed, count, geometry, params). Every spec satisfies the
// r_in floor and the pole / disk margins of its geometry, checked from the
// analytic radius bounds of the family. Throws Error(infeasible) when the
// parameters leave no admissible body.
std::vector<BodySpec> generate_corpus(std::uint64_t seed, int count, Geometry geometry,
                                      const FamilyParams& params);

nlohmann::json corpus_to_json(const std::vector<BodySpec>& corpus);
std::vector<BodySpec> corpus_from_json(const nlohmann::json& j);

}  // namespace petty

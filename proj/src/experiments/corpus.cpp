#include "petty/experiments/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "petty/core/error.hpp"
#include "petty/core/sampling.hpp"

namespace petty {

namespace {

struct Range {
  double lo, hi;
};

// Chart-side size of generated bodies. The upper limits keep not just the
// body but its projection body inside the pole / disk margins: h_Pi <= pi R
// (n = 2) or 2 pi R^2 (n = 3) for a convex chart body of max radius R.
Range c0_range(Geometry g) {
  switch (g) {
    case Geometry::spherical: return {0.25, 0.9};
    case Geometry::hyperbolic: return {0.3, 1.4};
    default: return {0.5, 1.5};
  }
}

double chart_limit(Geometry g) {
  switch (g) {
    case Geometry::spherical: return 1.4;
    case Geometry::hyperbolic: return 2.0;
    default: return 1e6;
  }
}

Range cap_range(Geometry g) {
  switch (g) {
    case Geometry::spherical: return {0.2, 0.9};
    case Geometry::hyperbolic: return {0.3, 1.4};
    default: return {0.5, 1.5};
  }
}

double draw(std::mt19937_64& rng, Range r) { return r.lo + (r.hi - r.lo) * uniform01(rng); }

double cap_chart_radius(Geometry g, double r) {
  switch (g) {
    case Geometry::spherical: return std::tan(r);
    case Geometry::hyperbolic: return std::sinh(r);
    default: return r;
  }
}

BodySpec base_spec(Geometry g, int dim) {
  BodySpec s;
  s.dim = dim;
  s.chart = default_chart(g);
  return s;
}

BodySpec cap_spec(Geometry g, int dim, double r) {
  BodySpec s = base_spec(g, dim);
  s.kind = "ball";
  if (g == Geometry::euclidean) {
    s.radius = r;
  } else {
    s.angular_radius = r;
    if (g == Geometry::hyperbolic) s.chart = "poincare";
  }
  return s;
}

// Returns false when the analytic radius bounds violate the floor or margin.
bool draw_trig(std::mt19937_64& rng, Geometry g, const FamilyParams& p, BodySpec& s) {
  s = base_spec(g, p.dim);
  s.kind = "trig-radial";
  s.c0 = draw(rng, c0_range(g));
  const int degree = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p.max_degree));
  const double budget = draw(rng, {0.25 * p.anisotropy, p.anisotropy}) * s.c0;
  std::vector<double> w(degree);
  double weighted = 0.0;
  for (int k = 1; k <= degree; ++k) {
    w[k - 1] = 0.2 + 0.8 * uniform01(rng);
    weighted += (1.0 + k * k) * w[k - 1];
  }
  double amp_sum = 0.0;
  for (int k = 1; k <= degree; ++k) {
    const double a = w[k - 1] * budget / weighted;
    amp_sum += a;
    BodySpec::Term t;
    t.k = k;
    if (p.dim == 2) {
      const double phase = 2.0 * std::numbers::pi * uniform01(rng);
      t.planar = true;
      t.cos = a * std::cos(phase);
      t.sin = a * std::sin(phase);
    } else {
      t.axis = random_direction(rng, 3);
      t.amp = uniform01(rng) < 0.5 ? -a : a;
    }
    s.terms.push_back(t);
  }
  return s.c0 - amp_sum >= p.r_in_floor && s.c0 + amp_sum <= chart_limit(g);
}

bool draw_ellipsoid(std::mt19937_64& rng, Geometry g, const FamilyParams& p, BodySpec& s) {
  s = base_spec(g, p.dim);
  s.kind = "ellipsoid";
  const double big = draw(rng, c0_range(g));
  for (int i = 0; i < p.dim; ++i) s.axes.push_back(big * draw(rng, {0.45, 1.0}));
  s.axes[rng() % static_cast<std::uint64_t>(p.dim)] = big;
  s.rotation_deg = 180.0 * uniform01(rng);
  if (p.dim == 3) s.rotation_axis = random_direction(rng, 3);
  const auto [lo, hi] = std::minmax_element(s.axes.begin(), s.axes.end());
  return *lo >= p.r_in_floor && *hi <= chart_limit(g);
}

}  // namespace

Geometry parse_geometry(std::string_view name) {
  if (name == "euclidean") return Geometry::euclidean;
  if (name == "spherical") return Geometry::spherical;
  if (name == "hyperbolic") return Geometry::hyperbolic;
  throw Error(Errc::out_of_range, "unknown geometry '" + std::string(name) + "'");
}

const char* geometry_name(Geometry g) {
  switch (g) {
    case Geometry::euclidean: return "euclidean";
    case Geometry::spherical: return "spherical";
    case Geometry::hyperbolic: return "hyperbolic";
  }
  return "?";
}

const char* default_chart(Geometry g) {
  switch (g) {
    case Geometry::spherical: return "gnomonic";
    case Geometry::hyperbolic: return "phi";
    default: return "euclidean";
  }
}

std::vector<BodySpec> generate_corpus(std::uint64_t seed, int count, Geometry geometry,
                                      const FamilyParams& params) {
  if (count < 0) throw Error(Errc::infeasible, "corpus count must be nonnegative");
  if (params.dim != 2 && params.dim != 3) throw Error(Errc::unsupported_dimension, "corpus dim must be 2 or 3");
  if (!(params.r_in_floor > 0.0)) throw Error(Errc::infeasible, "r_in floor must be positive");
  std::mt19937_64 rng(seed);
  std::vector<BodySpec> out;

  if (params.family == "cap") {
    if (!params.radii.empty() && params.radii.size() != static_cast<std::size_t>(count))
      throw Error(Errc::infeasible, "cap family: count differs from the number of radii");
    for (int i = 0; i < count; ++i) {
      const double r = params.radii.empty() ? draw(rng, cap_range(geometry)) : params.radii[i];
      const double c = cap_chart_radius(geometry, r);
      if (!(r > 0.0) || c < params.r_in_floor || c > chart_limit(geometry))
        throw Error(Errc::infeasible, "cap radius " + std::to_string(r) + " violates the floor or margin");
      out.push_back(cap_spec(geometry, params.dim, r));
    }
    return out;
  }

  bool (*drawer)(std::mt19937_64&, Geometry, const FamilyParams&, BodySpec&) = nullptr;
  if (params.family == "trig-radial") {
    if (params.max_degree < 1) throw Error(Errc::infeasible, "trig-radial: max_degree must be >= 1");
    if (!(params.anisotropy > 0.0 && params.anisotropy < 1.0))
      throw Error(Errc::infeasible, "trig-radial: anisotropy must lie in (0, 1)");
    drawer = draw_trig;
  } else if (params.family == "ellipsoid") {
    drawer = draw_ellipsoid;
  } else {
    throw Error(Errc::infeasible, "unknown family '" + params.family + "'");
  }
  for (int i = 0; i < count; ++i) {
    BodySpec s;
    int tries = 0;
    while (!drawer(rng, geometry, params, s))
      if (++tries == 1000) throw Error(Errc::infeasible, params.family + ": no body meets the r_in floor and margins");
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json corpus_to_json(const std::vector<BodySpec>& corpus) {
  auto j = nlohmann::json::array();
  for (const BodySpec& s : corpus) j.push_back(to_json(s));
  return j;
}

std::vector<BodySpec> corpus_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(Errc::invalid_body, "corpus must be a JSON array of body specs");
  std::vector<BodySpec> out;
  for (const auto& e : j) out.push_back(body_spec_from_json(e));
  return out;
}

}  // namespace petty

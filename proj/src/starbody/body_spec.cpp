#include "petty/starbody/body_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "petty/core/error.hpp"
#include "petty/core/rotation.hpp"

namespace petty {

namespace {

Vec vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3)
    throw Error(Errc::invalid_body, "vectors are arrays of 2 or 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
}

nlohmann::json vec_to(const Vec& v, int dim) {
  return dim == 2 ? nlohmann::json::array({v.x, v.y}) : nlohmann::json::array({v.x, v.y, v.z});
}

Rotation spec_rotation(const BodySpec& s) {
  const double angle = s.rotation_deg * std::numbers::pi / 180.0;
  return s.dim == 2 ? Rotation::planar(angle) : Rotation::about_axis(s.rotation_axis, angle);
}

double ball_radius(const BodySpec& s) {
  if (s.radius) return *s.radius;
  if (!s.angular_radius) return 1.0;
  const double a = *s.angular_radius;
  if (s.chart == "gnomonic") return std::tan(a);
  if (s.chart == "poincare") return std::tanh(0.5 * a);
  if (s.chart == "phi") return std::sinh(a);
  return a;
}

double axis_len(const BodySpec& s, int i) {
  if (s.axes.size() != static_cast<std::size_t>(s.dim))
    throw Error(Errc::invalid_body, s.kind + ": axes must have dim entries");
  return s.axes[i];
}

}  // namespace

BodySpec body_spec_from_json(const nlohmann::json& j) {
  try {
    BodySpec s;
    s.kind = j.value("kind", std::string("ball"));
    s.dim = j.value("dim", 2);
    if (s.dim != 2 && s.dim != 3) throw Error(Errc::unsupported_dimension, "body dim must be 2 or 3");
    if (j.contains("radius")) s.radius = j["radius"].get<double>();
    if (j.contains("angular_radius")) s.angular_radius = j["angular_radius"].get<double>();
    if (j.contains("axes")) s.axes = j["axes"].get<std::vector<double>>();
    s.p = j.value("p", 2.0);
    s.half_width = j.value("half_width", 1.0);
    s.c0 = j.value("c0", 1.0);
    if (j.contains("terms")) {
      for (const auto& t : j["terms"]) {
        BodySpec::Term term;
        term.k = t.at("k").get<int>();
        if (t.contains("axis")) {
          term.axis = vec_from(t["axis"]);
          term.amp = t.value("amp", 0.0);
        } else {
          term.planar = true;
          term.cos = t.value("cos", 0.0);
          term.sin = t.value("sin", 0.0);
        }
        s.terms.push_back(term);
      }
    }
    if (j.contains("halfspaces"))
      for (const auto& h : j["halfspaces"])
        s.halfspaces.push_back({vec_from(h.at("normal")), h.at("offset").get<double>()});
    s.rotation_deg = j.value("rotation_deg", 0.0);
    if (j.contains("rotation_axis")) s.rotation_axis = vec_from(j["rotation_axis"]);
    s.scale = j.value("scale", 1.0);
    if (j.contains("inner_radius")) s.inner_radius = j["inner_radius"].get<double>();
    s.chart = j.value("chart", std::string("euclidean"));
    s.delta_pole = j.value("delta_pole", 0.05);
    s.delta_disk = j.value("delta_disk", 0.02);
    static const char* kinds[] = {"ball", "ellipsoid", "cube", "superellipsoid", "trig-radial",
                                  "polytope"};
    if (std::none_of(std::begin(kinds), std::end(kinds), [&](const char* k) { return s.kind == k; }))
      throw Error(Errc::invalid_body, "unknown body kind '" + s.kind + "'");
    static const char* charts[] = {"euclidean", "gnomonic", "poincare", "phi"};
    if (std::none_of(std::begin(charts), std::end(charts), [&](const char* c) { return s.chart == c; }))
      throw Error(Errc::invalid_body, "unknown chart marker '" + s.chart + "'");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_body, std::string("body spec: ") + e.what());
  }
}

nlohmann::json to_json(const BodySpec& s) {
  nlohmann::json j;
  j["kind"] = s.kind;
  j["dim"] = s.dim;
  j["chart"] = s.chart;
  if (s.kind == "ball") {
    if (s.radius) j["radius"] = *s.radius;
    if (s.angular_radius) j["angular_radius"] = *s.angular_radius;
  } else if (s.kind == "ellipsoid") {
    j["axes"] = s.axes;
  } else if (s.kind == "cube") {
    j["half_width"] = s.half_width;
  } else if (s.kind == "superellipsoid") {
    j["axes"] = s.axes;
    j["p"] = s.p;
  } else if (s.kind == "trig-radial") {
    j["c0"] = s.c0;
    auto terms = nlohmann::json::array();
    for (const auto& t : s.terms) {
      if (t.planar) terms.push_back({{"k", t.k}, {"cos", t.cos}, {"sin", t.sin}});
      else terms.push_back({{"k", t.k}, {"amp", t.amp}, {"axis", vec_to(t.axis, s.dim)}});
    }
    j["terms"] = terms;
  } else if (s.kind == "polytope") {
    auto hs = nlohmann::json::array();
    for (const auto& h : s.halfspaces) hs.push_back({{"normal", vec_to(h.normal, s.dim)}, {"offset", h.offset}});
    j["halfspaces"] = hs;
  }
  if (s.rotation_deg != 0.0) {
    j["rotation_deg"] = s.rotation_deg;
    if (s.dim == 3) j["rotation_axis"] = vec_to(s.rotation_axis, 3);
  }
  if (s.scale != 1.0) j["scale"] = s.scale;
  if (s.inner_radius) j["inner_radius"] = *s.inner_radius;
  if (s.chart == "gnomonic") j["delta_pole"] = s.delta_pole;
  if (s.chart == "poincare" || s.chart == "phi") j["delta_disk"] = s.delta_disk;
  return j;
}

BodySpec load_body_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open body spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_body, path + ": " + e.what());
  }
  return body_spec_from_json(j);
}

double spec_radial(const BodySpec& s, const Vec& u_world) {
  const Vec u = spec_rotation(s).inverse().apply(u_world);
  double r = 0.0;
  if (s.kind == "ball") {
    r = ball_radius(s);
  } else if (s.kind == "ellipsoid") {
    double acc = 0.0;
    for (int i = 0; i < s.dim; ++i) acc += (u[i] / axis_len(s, i)) * (u[i] / axis_len(s, i));
    r = 1.0 / std::sqrt(acc);
  } else if (s.kind == "cube") {
    r = s.half_width / std::max({std::abs(u.x), std::abs(u.y), std::abs(u.z)});
  } else if (s.kind == "superellipsoid") {
    if (!(s.p >= 1.0)) throw Error(Errc::invalid_body, "superellipsoid exponent must be >= 1");
    double acc = 0.0;
    for (int i = 0; i < s.dim; ++i) acc += std::pow(std::abs(u[i] / axis_len(s, i)), s.p);
    r = std::pow(acc, -1.0 / s.p);
  } else if (s.kind == "trig-radial") {
    r = s.c0;
    const double t = std::atan2(u.y, u.x);
    for (const auto& term : s.terms) {
      if (term.planar) {
        r += term.cos * std::cos(term.k * t) + term.sin * std::sin(term.k * t);
      } else {
        const double c = std::clamp(dot(u, normalized(term.axis)), -1.0, 1.0);
        r += term.amp * std::cos(term.k * std::acos(c));
      }
    }
  } else if (s.kind == "polytope") {
    r = 1e300;
    for (const auto& h : s.halfspaces) {
      const double c = dot(h.normal, u);
      if (c > 0.0) r = std::min(r, h.offset / c);
    }
    if (r >= 1e300) throw Error(Errc::invalid_body, "polytope is unbounded");
  } else {
    throw Error(Errc::invalid_body, "unknown body kind '" + s.kind + "'");
  }
  return r * s.scale;
}

StarBody build_body(const BodySpec& spec, const GridPtr& grid) {
  if (grid->dim() != spec.dim) throw Error(Errc::grid_mismatch, "body dim differs from grid dim");
  return StarBody::from_function(grid, [&](const Vec& u) { return spec_radial(spec, u); }, spec.inner_radius);
}

}  // namespace petty

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "petty/core/error.hpp"
#include "petty/starbody/report.hpp"

namespace petty::detail {

// Fills the chain from its four values; perimeters already carry c0.
inline ChainReport chain_from_values(double perimeter_star, double finv_star, double finv_body,
                                     double perimeter_body, double eps, double equality_band) {
  ChainReport c{perimeter_star, finv_star, finv_body, perimeter_body};
  c.endpoint_equal = std::abs(perimeter_star - finv_star) <= equality_band * perimeter_star;
  c.middle_holds = finv_star <= finv_body + eps;
  c.upper_holds = finv_body <= perimeter_body + eps;
  return c;
}

// Shared driver of verify_spherical_petty / verify_hyperbolic_petty.
//   step(body, u)  -> {body, r_k, clamped}
//   measure(body), polar_measure(body), distance(a, b)
template <class Body, class Step, class Measure, class PolarMeasure, class Distance>
PettyReport run_petty(const Body& body, const Body& star, const std::vector<Vec>& schedule,
                      const VerifyOptions& options, Step&& step, Measure&& measure,
                      PolarMeasure&& polar_measure, Distance&& distance) {
  const auto start = std::chrono::steady_clock::now();
  PettyReport rep;
  rep.dim = body.dim();
  rep.eps_quad = options.eps_quad;
  // Errors on the input body itself are reported as iterate 0.
  double m0 = 0.0, d0 = 0.0;
  try {
    rep.lhs = polar_measure(body);
    rep.rhs = polar_measure(star);
    m0 = measure(body);
    d0 = distance(body, star);
  } catch (const Error& e) {
    throw IterationError(e, 0);
  }
  rep.margin = rep.rhs - rep.lhs;
  rep.inequality_holds = rep.lhs <= rep.rhs + options.eps_quad;
  rep.equality = std::abs(rep.margin) <= options.equality_band * rep.rhs;

  auto every = [&](std::size_t i, int stride) {
    return i == schedule.size() || (stride > 0 && i % static_cast<std::size_t>(stride) == 0);
  };
  constexpr double untracked = std::numeric_limits<double>::quiet_NaN();
  double prev = rep.lhs;  // last tracked polar projection measure
  Body cur = body;
  rep.iterates.push_back({0, Vec{}, 1.0, false, m0, rep.lhs, d0});
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    IterateRecord row;
    try {
      auto res = step(cur, schedule[i]);
      cur = std::move(res.body);
      row = {static_cast<int>(i + 1), schedule[i], res.r_k, res.clamped, measure(cur), untracked, untracked};
      if (every(i + 1, options.polar_every)) row.polar_proj_measure = polar_measure(cur);
      if (every(i + 1, options.distance_every)) row.dist_to_star = distance(cur, star);
    } catch (const Error& e) {
      throw IterationError(e, static_cast<int>(i + 1));
    }
    if (!std::isnan(row.polar_proj_measure)) {
      if (row.polar_proj_measure < prev - options.eps_quad) ++rep.violations;
      rep.worst_decrease = std::max(rep.worst_decrease, prev - row.polar_proj_measure);
      prev = row.polar_proj_measure;
    }
    rep.max_measure_drift = std::max(rep.max_measure_drift, std::abs(row.measure - m0) / m0);
    rep.iterates.push_back(row);
  }
  rep.initial_distance = rep.iterates.front().dist_to_star;
  rep.final_distance = rep.iterates.back().dist_to_star;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace petty::detail

#pragma once

#include <array>
#include <vector>

#include "petty/core/exec.hpp"
#include "petty/core/vec.hpp"
#include "petty/starbody/star_body.hpp"

namespace petty {

// A node is a corner when its two one-sided normal estimates (along theta or
// along phi) disagree by more than corner_angle radians, and by more than
// corner_ratio times the disagreement at one of its neighbours along that
// axis. The second test separates kinks from curvature on coarse grids, where
// smooth bodies also show large one-sided differences.
inline constexpr double corner_angle = 0.1;
inline constexpr double corner_ratio = 2.0;
// Nodes where u . nu <= this are degenerate (boundary tangent to the ray).
inline constexpr double degenerate_cos = 1e-6;

// Unnormalized outer normal N = rho u - grad_S rho at a boundary node. Smooth
// nodes carry one estimate from the spline derivatives; corner nodes carry the
// one-sided combinations (2 in the plane, up to 4 in space) and integrands are
// averaged over them.
struct NodeNormal {
  std::array<Vec, 4> variants{};
  int count = 0;
  bool corner = false;
  bool degenerate = false;
};

bool is_corner_node(const StarBody& body, std::size_t i);

std::vector<NodeNormal> node_normals(const StarBody& body, Exec exec = default_exec());

// Unit outer normal of the interpolated boundary in direction u.
// Throws Error(degenerate_normal) when u . nu <= degenerate_cos.
Vec boundary_normal(const StarBody& body, const Vec& u);

struct PerimeterReport {
  double value = 0.0;
  std::vector<std::size_t> degenerate_nodes;  // excluded from the sum
  std::size_t corner_nodes = 0;
};

// H^{n-1}(boundary) = sum_i w_i rho_i^{n-2} |N_i|.
PerimeterReport perimeter_report(const StarBody& body, Exec exec = default_exec());
double perimeter(const StarBody& body);

// V_i = rho_i^{n-2} * mean(N_i): the surface-element-weighted normal field, so
// that integrals over the boundary of f(nu) |dS| become sum_i w_i f(V_i) for
// 1-homogeneous f. Degenerate nodes contribute zero.
std::vector<Vec> surface_vectors(const StarBody& body, const std::vector<NodeNormal>& normals);

}  // namespace petty

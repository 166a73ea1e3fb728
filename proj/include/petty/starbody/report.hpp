#pragma once

#include <string>
#include <vector>

#include "petty/core/error.hpp"
#include "petty/core/vec.hpp"

namespace petty {

// One row of a symmetrization run. Row 0 is the input body (no direction,
// r_K = 1).
struct IterateRecord {
  int iter = 0;
  Vec direction;
  double r_k = 1.0;
  bool clamped = false;
  double measure = 0.0;             // intrinsic measure of the iterate
  double polar_proj_measure = 0.0;  // measure of the polar projection body
  double dist_to_star = 0.0;        // intrinsic Hausdorff distance to the rearrangement
};

// The isoperimetric chain
//   c0 P(K*) = F^{-1}(m(K*)) <= F^{-1}(m(K)) <= c0 P(K),
// with m = (1 / n omega_n) * polar projection measure and P the chart
// perimeter.
struct ChainReport {
  double perimeter_star = 0.0;  // c0 P(K*)
  double finv_star = 0.0;       // F^{-1}(m(K*))
  double finv_body = 0.0;       // F^{-1}(m(K))
  double perimeter_body = 0.0;  // c0 P(K)
  bool endpoint_equal = false;  // |perimeter_star - finv_star| within the equality band
  bool middle_holds = false;    // finv_star <= finv_body + eps
  bool upper_holds = false;     // finv_body <= perimeter_body + eps
};

struct PettyReport {
  std::string geometry;
  int dim = 0;
  double lhs = 0.0;  // polar projection measure of K
  double rhs = 0.0;  // same for the rearrangement
  double margin = 0.0;  // rhs - lhs
  bool inequality_holds = false;  // lhs <= rhs + eps_quad
  bool equality = false;          // |margin| within the equality band (relative)
  double eps_quad = 0.0;
  std::vector<IterateRecord> iterates;
  int violations = 0;  // decreases of polar_proj_measure beyond eps_quad
  double worst_decrease = 0.0;
  double max_measure_drift = 0.0;  // relative, over all iterates
  double initial_distance = 0.0;
  double final_distance = 0.0;
  ChainReport chain;
  double seconds = 0.0;
};

// A kernel error raised while computing iterate `iterate` of a run.
class IterationError : public Error {
 public:
  IterationError(const Error& cause, int iterate)
      : Error(cause), iterate_(iterate) {}
  int iterate() const noexcept { return iterate_; }

 private:
  int iterate_;
};

struct VerifyOptions {
  double eps_quad = 1e-8;        // slack for monotonicity and the inequality
  double equality_band = 1e-6;   // relative band for equality cases
  int distance_every = 1;        // 0 = only first and last iterate
  int polar_every = 1;           // same for the polar projection measure
};

}  // namespace petty

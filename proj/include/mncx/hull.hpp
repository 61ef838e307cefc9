#pragma once

#include "mncx/structured_set.hpp"

namespace mncx {

struct HullDistanceResult {
  double value = 0.0;            // p-distance from the origin to co(P)
  SparseVector primal_point;     // best convex combination found
  SparseVector dual_functional;  // unit dual-ball element certifying dual_bound
  double dual_bound = 0.0;       // min_i <f, x_i> <= value
  double gap = 0.0;              // value - dual_bound (primal norm if degenerate)
  int iterations = 0;
};

// Distance from the origin to the convex hull of P, computed by away-step
// Frank-Wolfe over the simplex with a norm-gradient dual certificate. When
// the origin lies (numerically) inside the hull the result is degenerate:
// value < tol and gap is set to the primal norm.
HullDistanceResult hull_distance(const FinitePointSet& P, const SpaceSpec& space,
                                 double tol = 1e-6);

// Lower bound min_i <f, x_i> after normalizing f to the dual unit sphere.
// Rejects the zero functional.
double dual_bound(const SparseVector& f, const FinitePointSet& P, const SpaceSpec& space);

}  // namespace mncx

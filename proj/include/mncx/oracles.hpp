#pragma once

#include "mncx/structured_set.hpp"

namespace mncx {

// Caps for the exact enumeration oracles.
struct OracleBudget {
  int max_points = 12;             // hard cap 16 (bitmask-sized instances)
  int max_parts = 4;               // partition arity cap
  double solver_tolerance = 1e-8;  // target accuracy of the Chebyshev solver

  void validate() const;
};

// Kernel selection: OpenMP work-sharing or the serial reference path.
// Results are identical (exact reductions), only scheduling differs.
enum class ExecMode { Serial, Parallel };

// Smallest achievable max-part-diameter over partitions of P into <= k parts.
double alpha_k(const FinitePointSet& P, int k, const SpaceSpec& space,
               const OracleBudget& budget = {}, ExecMode mode = ExecMode::Parallel);

// Smallest achievable max-part-Chebyshev-radius over partitions into <= k parts.
double chi_k(const FinitePointSet& P, int k, const SpaceSpec& space,
             const OracleBudget& budget = {}, ExecMode mode = ExecMode::Parallel);

// Largest achievable min-pairwise-distance over m-point subsets of P.
double beta_m(const FinitePointSet& P, int m, const SpaceSpec& space,
              const OracleBudget& budget = {}, ExecMode mode = ExecMode::Parallel);

struct ChebyshevResult {
  SparseVector center;
  double radius = 0.0;
  // Certification data: distance from 0 to the hull of active-point gradients
  // at the returned center (0 at a true minimizer), and the half-max-pairwise
  // lower bound the radius was checked against.
  double stationarity = 0.0;
  double lower_bound = 0.0;
};

// Center minimizing the max p-distance to the points of P.
ChebyshevResult chebyshev_radius(const FinitePointSet& P, const SpaceSpec& space,
                                 const OracleBudget& budget = {});

}  // namespace mncx

#pragma once

// Internal dense views of finite point sets, shared by the oracle and hull
// solvers. Not installed.

#include <vector>

#include "mncx/structured_set.hpp"

namespace mncx::detail {

struct DensePoints {
  std::vector<int> coords;   // sorted original coordinate indices
  std::vector<double> data;  // n x d, row-major
  int n = 0;
  int d = 0;

  const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * d; }
};

DensePoints densify(const FinitePointSet& P);

SparseVector sparsify(const std::vector<double>& dense, const std::vector<int>& coords);

double norm_p(const double* v, int d, double p);

// Gradient of the p-norm at v != 0; lands on the dual unit sphere.
void norm_gradient(const double* v, int d, double p, double nrm, double* out);

}  // namespace mncx::detail

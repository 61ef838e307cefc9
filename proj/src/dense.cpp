#include "dense.hpp"

#include <algorithm>
#include <cmath>

namespace mncx::detail {

DensePoints densify(const FinitePointSet& P) {
  DensePoints out;
  for (const auto& pt : P.points) {
    for (const auto& [idx, c] : pt.entries()) {
      (void)c;
      out.coords.push_back(idx);
    }
  }
  std::sort(out.coords.begin(), out.coords.end());
  out.coords.erase(std::unique(out.coords.begin(), out.coords.end()), out.coords.end());
  out.n = static_cast<int>(P.points.size());
  out.d = static_cast<int>(out.coords.size());
  if (out.d == 0) out.d = 1;  // all points are the origin; keep one slot
  out.data.assign(static_cast<std::size_t>(out.n) * out.d, 0.0);
  for (int i = 0; i < out.n; ++i) {
    double* row = out.data.data() + static_cast<std::size_t>(i) * out.d;
    for (const auto& [idx, c] : P.points[i].entries()) {
      auto it = std::lower_bound(out.coords.begin(), out.coords.end(), idx);
      row[it - out.coords.begin()] = c;
    }
  }
  return out;
}

SparseVector sparsify(const std::vector<double>& dense, const std::vector<int>& coords) {
  SparseVector v;
  for (std::size_t j = 0; j < coords.size() && j < dense.size(); ++j) {
    if (dense[j] != 0.0 && std::abs(dense[j]) > 1e-300) v.set(coords[j], dense[j]);
  }
  return v;
}

double norm_p(const double* v, int d, double p) {
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    if (v[j] != 0.0) sum += std::pow(std::abs(v[j]), p);
  }
  return sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / p);
}

void norm_gradient(const double* v, int d, double p, double nrm, double* out) {
  for (int j = 0; j < d; ++j) {
    if (v[j] == 0.0) {
      out[j] = 0.0;
    } else {
      double t = std::pow(std::abs(v[j]) / nrm, p - 1.0);
      out[j] = v[j] > 0.0 ? t : -t;
    }
  }
}

}  // namespace mncx::detail

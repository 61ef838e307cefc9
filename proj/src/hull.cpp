#include "mncx/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dense.hpp"

namespace mncx {

namespace {

constexpr int kIterationCap = 50000;

// Exact line minimum of t -> ||y + t*dir||_p over [0, t_max]: closed form for
// p = 2, bisection on the monotone directional derivative otherwise.
double line_search(const std::vector<double>& y, const std::vector<double>& dir,
                   double t_max, double p) {
  int d = static_cast<int>(y.size());
  if (p == 2.0) {
    double yd = 0.0;
    double dd = 0.0;
    for (int j = 0; j < d; ++j) {
      yd += y[j] * dir[j];
      dd += dir[j] * dir[j];
    }
    if (dd <= 0.0) return 0.0;
    return std::clamp(-yd / dd, 0.0, t_max);
  }
  auto derivative = [&](double t) {
    // d/dt ||y + t dir||_p^p / p = sum sign(v) |v|^(p-1) dir  (monotone in t)
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      double v = y[j] + t * dir[j];
      if (v != 0.0) {
        double w = std::pow(std::abs(v), p - 1.0);
        s += (v > 0.0 ? w : -w) * dir[j];
      }
    }
    return s;
  };
  if (derivative(0.0) >= 0.0) return 0.0;
  if (derivative(t_max) <= 0.0) return t_max;
  double lo = 0.0;
  double hi = t_max;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (derivative(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double dual_bound(const SparseVector& f, const FinitePointSet& P, const SpaceSpec& space) {
  space.validate();
  if (P.points.empty()) throw DomainError("dual_bound needs a nonempty point set");
  double q = dual_exponent(space.p);
  double fq = norm(f, q);
  if (fq <= 0.0) throw DomainError("dual_bound rejects the zero functional");
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& x : P.points) {
    bound = std::min(bound, dot(f, x) / fq);
  }
  return bound;
}

HullDistanceResult hull_distance(const FinitePointSet& P, const SpaceSpec& space,
                                 double tol) {
  space.validate();
  if (P.points.empty()) throw DomainError("hull_distance needs a nonempty point set");
  if (!(tol > 0.0)) throw DomainError("hull tolerance must be positive");
  const double p = space.p;
  detail::DensePoints X = detail::densify(P);
  const int n = X.n;
  const int d = X.d;

  std::vector<double> lambda(n, 1.0 / n);
  std::vector<double> y(d, 0.0);
  auto rebuild_y = [&]() {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (lambda[i] == 0.0) continue;
      const double* row = X.row(i);
      for (int j = 0; j < d; ++j) y[j] += lambda[i] * row[j];
    }
  };
  rebuild_y();

  std::vector<double> grad(d), dir(d);
  std::vector<double> best_y = y;
  double best_primal = detail::norm_p(y.data(), d, p);
  double best_dual = -std::numeric_limits<double>::infinity();
  std::vector<double> best_f(d, 0.0);
  bool have_f = false;
  int iter = 0;

  auto degenerate_result = [&]() {
    HullDistanceResult res;
    res.value = best_primal;
    res.primal_point = detail::sparsify(best_y, X.coords);
    if (!have_f) {
      // No usable gradient was ever formed; any dual-unit functional works.
      std::fill(best_f.begin(), best_f.end(), 0.0);
      best_f[0] = 1.0;
    }
    res.dual_functional = detail::sparsify(best_f, X.coords);
    double bnd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = X.row(i);
      for (int j = 0; j < d; ++j) s += best_f[j] * row[j];
      bnd = std::min(bnd, s);
    }
    res.dual_bound = bnd;
    res.gap = best_primal;  // origin-in-hull certificates are not pursued
    res.iterations = iter;
    return res;
  };

  for (; iter < kIterationCap; ++iter) {
    double ynorm = detail::norm_p(y.data(), d, p);
    if (ynorm < best_primal) {
      best_primal = ynorm;
      best_y = y;
    }
    if (best_primal < tol) return degenerate_result();

    detail::norm_gradient(y.data(), d, p, ynorm, grad.data());
    have_f = true;
    // scores s_i = <x_i, grad>; their min is a valid lower bound because the
    // norm gradient lies on the dual unit sphere
    double s_min = std::numeric_limits<double>::infinity();
    double s_max_active = -std::numeric_limits<double>::infinity();
    int i_fw = 0;
    int i_away = -1;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = X.row(i);
      for (int j = 0; j < d; ++j) s += grad[j] * row[j];
      if (s < s_min) {
        s_min = s;
        i_fw = i;
      }
      if (lambda[i] > 0.0 && s > s_max_active) {
        s_max_active = s;
        i_away = i;
      }
    }
    if (s_min > best_dual) {
      best_dual = s_min;
      best_f = grad;
    }
    if (best_primal - best_dual <= tol) break;

    // Pick the steeper of the Frank-Wolfe and away directions.
    double fw_slope = s_min - ynorm;          // <grad, x_fw - y>, Euler identity
    double away_slope = ynorm - s_max_active;  // <grad, y - x_away>
    bool use_away = i_away >= 0 && away_slope < fw_slope && lambda[i_away] < 1.0;
    double t_max;
    if (use_away) {
      const double* row = X.row(i_away);
      for (int j = 0; j < d; ++j) dir[j] = y[j] - row[j];
      t_max = lambda[i_away] / (1.0 - lambda[i_away]);
    } else {
      const double* row = X.row(i_fw);
      for (int j = 0; j < d; ++j) dir[j] = row[j] - y[j];
      t_max = 1.0;
    }
    double t = line_search(y, dir, t_max, p);
    if (t <= 0.0) {
      // Exact line search makes no progress in either direction: the current
      // iterate is stationary over the working geometry, so stop here.
      break;
    }
    if (use_away) {
      for (int i = 0; i < n; ++i) lambda[i] *= (1.0 + t);
      lambda[i_away] -= t;
      if (t >= t_max - 1e-15 || lambda[i_away] < 0.0) lambda[i_away] = 0.0;
    } else {
      for (int i = 0; i < n; ++i) lambda[i] *= (1.0 - t);
      lambda[i_fw] += t;
    }
    if ((iter & 127) == 0) {
      rebuild_y();
    } else {
      for (int j = 0; j < d; ++j) y[j] += t * dir[j];
    }
  }

  if (best_primal < tol) return degenerate_result();
  double gap = best_primal - best_dual;
  if (gap > tol) {
    if (iter >= kIterationCap) {
      throw NumericError("hull solver exhausted its iteration cap", best_dual, best_primal);
    }
    if (gap > 10.0 * tol) {
      throw NumericError("hull solver stalled before certifying its gap", best_dual,
                         best_primal);
    }
  }

  HullDistanceResult res;
  res.value = best_primal;
  res.primal_point = detail::sparsify(best_y, X.coords);
  res.dual_functional = detail::sparsify(best_f, X.coords);
  res.dual_bound = best_dual;
  res.gap = std::max(gap, 0.0);
  res.iterations = iter;
  return res;
}

}  // namespace mncx

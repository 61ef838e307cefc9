#include "mncx/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "dense.hpp"
#include "mncx/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mncx {

void OracleBudget::validate() const {
  if (max_points < 1 || max_points > 16) {
    throw DomainError("oracle budget max_points must lie in [1, 16]");
  }
  if (max_parts < 1) throw DomainError("oracle budget max_parts must be positive");
  if (!(solver_tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> pairwise_distances(const FinitePointSet& P, double p) {
  int n = static_cast<int>(P.points.size());
  std::vector<double> D(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dij = distance(P.points[i], P.points[j], p);
      D[static_cast<std::size_t>(i) * n + j] = dij;
      D[static_cast<std::size_t>(j) * n + i] = dij;
    }
  }
  return D;
}

double max_pairwise(const std::vector<double>& D) {
  double m = 0.0;
  for (double v : D) m = std::max(m, v);
  return m;
}

// ------------------------- Chebyshev radius solver -------------------------
//
// Minimizes f(c) = max_i ||x_i - c||_p. Subgradient machinery: Polyak-step
// sweeps for warm starts, then descent along the negated minimum-norm point
// of the active-gradient hull with golden-section line search. Stationarity
// of that min-norm point is the optimality certificate; random restarts kick
// in only when certification fails.

struct ChebySolution {
  std::vector<double> center;
  double radius = 0.0;
  double stationarity = 0.0;
};

double eval_max_dist(const std::vector<const double*>& pts, int d, double p,
                     const double* c, std::vector<double>& dists) {
  double worst = 0.0;
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int j = 0; j < d; ++j) diff[j] = c[j] - pts[i][j];
    dists[i] = detail::norm_p(diff.data(), d, p);
    worst = std::max(worst, dists[i]);
  }
  return worst;
}

// Gradient of c -> ||c - x||_p, written into g.
void point_gradient(const double* x, const double* c, int d, double p, double dist,
                    double* g) {
  for (int j = 0; j < d; ++j) {
    double diff = c[j] - x[j];
    if (diff == 0.0 || dist == 0.0) {
      g[j] = 0.0;
    } else {
      double t = std::pow(std::abs(diff) / dist, p - 1.0);
      g[j] = diff > 0.0 ? t : -t;
    }
  }
}

// Euclidean min-norm point of the convex hull of `rows` via away-step
// Frank-Wolfe with exact steps (linear convergence even when the optimum sits
// strictly inside the hull); returns its norm and leaves the point in y.
double min_norm_point(const std::vector<std::vector<double>>& rows, int d,
                      std::vector<double>& y) {
  const int m = static_cast<int>(rows.size());
  std::vector<double> lambda(m, 1.0 / m);
  y.assign(d, 0.0);
  for (const auto& r : rows) {
    for (int j = 0; j < d; ++j) y[j] += r[j];
  }
  for (int j = 0; j < d; ++j) y[j] /= static_cast<double>(m);

  std::vector<double> dir(d);
  for (int iter = 0; iter < 600; ++iter) {
    double yy = 0.0;
    for (int j = 0; j < d; ++j) yy += y[j] * y[j];
    if (yy <= 1e-28) break;
    double s_min = kInf;
    double s_max = -kInf;
    int i_fw = 0;
    int i_aw = -1;
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += rows[i][j] * y[j];
      if (s < s_min) {
        s_min = s;
        i_fw = i;
      }
      if (lambda[i] > 0.0 && s > s_max) {
        s_max = s;
        i_aw = i;
      }
    }
    if (yy - s_min <= 1e-24) break;  // Frank-Wolfe gap certificate
    double fw_slope = s_min - yy;
    double aw_slope = yy - s_max;
    bool use_away = i_aw >= 0 && aw_slope < fw_slope && lambda[i_aw] < 1.0;
    double t_max;
    if (use_away) {
      for (int j = 0; j < d; ++j) dir[j] = y[j] - rows[i_aw][j];
      t_max = lambda[i_aw] / (1.0 - lambda[i_aw]);
    } else {
      for (int j = 0; j < d; ++j) dir[j] = rows[i_fw][j] - y[j];
      t_max = 1.0;
    }
    double dd = 0.0;
    double yd = 0.0;
    for (int j = 0; j < d; ++j) {
      dd += dir[j] * dir[j];
      yd += y[j] * dir[j];
    }
    if (dd < 1e-30) break;
    double t = std::clamp(-yd / dd, 0.0, t_max);
    if (t <= 0.0) break;
    if (use_away) {
      for (int i = 0; i < m; ++i) lambda[i] *= (1.0 + t);
      lambda[i_aw] -= t;
      if (t >= t_max - 1e-15 || lambda[i_aw] < 0.0) lambda[i_aw] = 0.0;
    } else {
      for (int i = 0; i < m; ++i) lambda[i] *= (1.0 - t);
      lambda[i_fw] += t;
    }
    for (int j = 0; j < d; ++j) y[j] += t * dir[j];
  }
  double nrm = 0.0;
  for (int j = 0; j < d; ++j) nrm += y[j] * y[j];
  return std::sqrt(nrm);
}

// Chebyshev center of the active points restricted to their affine hull
// (p = 2 only): solve the equidistance system by Gaussian elimination.
bool circumcenter(const std::vector<const double*>& pts, int d,
                  const std::vector<int>& active, std::vector<double>& c_out) {
  int m = static_cast<int>(active.size());
  if (m < 2) return false;
  const double* base = pts[active[0]];
  int vars = m - 1;
  std::vector<std::vector<double>> V(vars, std::vector<double>(d));
  for (int j = 0; j < vars; ++j) {
    const double* xj = pts[active[j + 1]];
    for (int t = 0; t < d; ++t) V[j][t] = xj[t] - base[t];
  }
  std::vector<std::vector<double>> M(vars, std::vector<double>(vars + 1, 0.0));
  for (int r = 0; r < vars; ++r) {
    for (int cidx = 0; cidx < vars; ++cidx) {
      double s = 0.0;
      for (int t = 0; t < d; ++t) s += V[r][t] * V[cidx][t];
      M[r][cidx] = s;
    }
    double vv = 0.0;
    for (int t = 0; t < d; ++t) vv += V[r][t] * V[r][t];
    M[r][vars] = vv / 2.0;  // (x_j - base) . (c - base) = |x_j - base|^2 / 2
  }
  for (int col = 0; col < vars; ++col) {
    int piv = col;
    for (int r = col + 1; r < vars; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    if (std::abs(M[piv][col]) < 1e-13) return false;
    std::swap(M[piv], M[col]);
    for (int r = 0; r < vars; ++r) {
      if (r == col) continue;
      double factor = M[r][col] / M[col][col];
      for (int cidx = col; cidx <= vars; ++cidx) M[r][cidx] -= factor * M[col][cidx];
    }
  }
  c_out.assign(base, base + d);
  for (int j = 0; j < vars; ++j) {
    double tj = M[j][vars] / M[j][j];
    for (int t = 0; t < d; ++t) c_out[t] += tj * V[j][t];
  }
  return true;
}

struct DescentOutcome {
  double f = kInf;
  double stationarity = kInf;
};

DescentOutcome minimax_descent(const std::vector<const double*>& pts, int d, double p,
                               std::vector<double>& c, int max_iters) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> dists(n);
  std::vector<double> y;
  std::vector<std::vector<double>> grads;
  std::vector<double> trial(d);
  DescentOutcome out;
  double band_scale = 1e-8;
  for (int iter = 0; iter < max_iters; ++iter) {
    double f = eval_max_dist(pts, d, p, c.data(), dists);
    out.f = f;
    double band = band_scale * std::max(1.0, f);
    grads.clear();
    for (int i = 0; i < n; ++i) {
      if (dists[i] >= f - band && dists[i] > 0.0) {
        grads.emplace_back(d);
        point_gradient(pts[i], c.data(), d, p, dists[i], grads.back().data());
      }
    }
    if (grads.empty()) {  // every point coincides with c
      out.stationarity = 0.0;
      return out;
    }
    double s = min_norm_point(grads, d, y);
    out.stationarity = s;
    if (s <= 1e-10 * std::max(1.0, f)) return out;
    // golden-section line search along -y
    double ynorm = 0.0;
    for (int j = 0; j < d; ++j) ynorm += y[j] * y[j];
    ynorm = std::sqrt(ynorm);
    double t_hi = 2.0 * f / std::max(ynorm, 1e-12);
    auto phi = [&](double t) {
      for (int j = 0; j < d; ++j) trial[j] = c[j] - t * y[j];
      return eval_max_dist(pts, d, p, trial.data(), dists);
    };
    const double invphi = 0.6180339887498949;
    double a = 0.0;
    double b = t_hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = phi(x1);
    double f2 = phi(x2);
    for (int gs = 0; gs < 60; ++gs) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = phi(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = phi(x2);
      }
    }
    double t_best = (a + b) / 2.0;
    double f_new = phi(t_best);
    if (f_new < f - 1e-16 * std::max(1.0, f)) {
      for (int j = 0; j < d; ++j) c[j] -= t_best * y[j];
      band_scale = 1e-8;
    } else {
      band_scale *= 16.0;  // widen the active band and retry
      if (band_scale > 0.05) return out;
    }
  }
  return out;
}

void polyak_sweep(const std::vector<const double*>& pts, int d, double p,
                  std::vector<double>& c, double lower, int iters) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> dists(n);
  std::vector<double> g(d);
  double f_best = kInf;
  std::vector<double> c_best = c;
  for (int iter = 0; iter < iters; ++iter) {
    double f = eval_max_dist(pts, d, p, c.data(), dists);
    if (f < f_best) {
      f_best = f;
      c_best = c;
    }
    int worst = 0;
    for (int i = 1; i < n; ++i) {
      if (dists[i] > dists[worst]) worst = i;
    }
    if (dists[worst] <= 0.0) break;
    point_gradient(pts[worst], c.data(), d, p, dists[worst], g.data());
    double gn2 = 0.0;
    for (int j = 0; j < d; ++j) gn2 += g[j] * g[j];
    if (gn2 < 1e-30) break;
    // Polyak step toward a target blending the half-diameter lower bound in;
    // the blend decays so late steps stay short.
    double target = std::max(lower, f_best - (f_best - lower) * std::pow(0.5, 1 + iter / 8));
    double step = 0.9 * (f - target) / gn2;
    if (step <= 0.0) step = 0.1 * (f - lower + 1e-12) / gn2;
    for (int j = 0; j < d; ++j) c[j] -= step * g[j];
  }
  c = c_best;
}

// ------------------- exact Euclidean 1-center (Welzl) ----------------------

struct Ball {
  std::vector<double> c;
  double r = -1.0;  // r < 0: the empty ball, containing nothing

  bool contains(const double* x, int d) const {
    if (r < 0.0) return false;
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      double diff = x[j] - c[j];
      s += diff * diff;
    }
    return std::sqrt(s) <= r + 1e-10 * std::max(1.0, r);
  }
};

Ball ball_from_support(const std::vector<const double*>& pts, int d,
                       const std::vector<int>& support) {
  Ball b;
  if (support.empty()) return b;
  if (support.size() == 1) {
    b.c.assign(pts[support[0]], pts[support[0]] + d);
    b.r = 0.0;
    return b;
  }
  std::vector<double> c;
  if (!circumcenter(pts, d, support, c)) return b;  // degenerate: stay empty
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    double diff = c[j] - pts[support[0]][j];
    s += diff * diff;
  }
  b.c = std::move(c);
  b.r = std::sqrt(s);
  return b;
}

Ball welzl_rec(const std::vector<const double*>& pts, int d,
               const std::vector<int>& order, int prefix, std::vector<int>& support) {
  if (prefix == 0 || static_cast<int>(support.size()) == d + 1) {
    return ball_from_support(pts, d, support);
  }
  int pi = order[prefix - 1];
  Ball b = welzl_rec(pts, d, order, prefix - 1, support);
  if (b.contains(pts[pi], d)) return b;
  support.push_back(pi);
  Ball forced = welzl_rec(pts, d, order, prefix - 1, support);
  support.pop_back();
  return forced.r >= 0.0 ? forced : b;
}

// Exact smallest enclosing ball for p = 2. Returns false when the support
// systems degenerate so badly that the result fails verification.
bool solve_welzl(const std::vector<const double*>& pts, int d, ChebySolution& out) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  Rng rng(0x9e1ce11ba11ull);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(rng.uniform_int(0, i))]);
  }
  std::vector<int> support;
  Ball b = welzl_rec(pts, d, order, n, support);
  if (b.r < 0.0) return false;

  std::vector<double> dists(n);
  double f = eval_max_dist(pts, d, 2.0, b.c.data(), dists);
  if (f > b.r + 1e-7 * std::max(1.0, b.r)) return false;  // enclosure failed

  std::vector<std::vector<double>> grads;
  for (int i = 0; i < n; ++i) {
    if (dists[i] >= f - 1e-8 * std::max(1.0, f) && dists[i] > 0.0) {
      grads.emplace_back(d);
      point_gradient(pts[i], b.c.data(), d, 2.0, dists[i], grads.back().data());
    }
  }
  std::vector<double> y;
  double stat = grads.empty() ? 0.0 : min_norm_point(grads, d, y);
  if (stat > 1e-6 * std::max(1.0, f)) return false;

  out.center = std::move(b.c);
  out.radius = f;
  out.stationarity = stat;
  return true;
}

ChebySolution solve_chebyshev_dense(const std::vector<const double*>& pts, int d,
                                    double p, double tol) {
  const int n = static_cast<int>(pts.size());
  ChebySolution best;
  best.center.assign(d, 0.0);
  if (n == 1) {
    best.center.assign(pts[0], pts[0] + d);
    return best;
  }

  ChebySolution euclid;
  bool have_euclid = solve_welzl(pts, d, euclid);
  if (p == 2.0 && have_euclid) return euclid;

  std::vector<double> dists(n);
  double maxpair = 0.0;
  {
    std::vector<double> diff(d);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int t = 0; t < d; ++t) diff[t] = pts[i][t] - pts[j][t];
        maxpair = std::max(maxpair, detail::norm_p(diff.data(), d, p));
      }
    }
  }
  const double lower = maxpair / 2.0;
  std::vector<double> centroid(d, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) centroid[j] += pts[i][j];
  }
  for (int j = 0; j < d; ++j) centroid[j] /= static_cast<double>(n);

  Rng rng(0x5eb5eb5eb5ebull);
  double best_f = kInf;
  double best_stat = kInf;
  std::vector<double> c;
  for (int attempt = 0; attempt <= 10; ++attempt) {
    if (attempt == 0 && have_euclid) {
      c = euclid.center;  // the Euclidean center is an excellent warm start
    } else {
      c = centroid;
    }
    if (attempt > 0) {
      for (int j = 0; j < d; ++j) c[j] += 0.25 * maxpair * rng.gaussian();
      polyak_sweep(pts, d, p, c, lower, 60);
    }
    for (int round = 0; round < 4; ++round) {
      DescentOutcome oc = minimax_descent(pts, d, p, c, 240);
      bool improved_by_polish = false;
      if (p == 2.0) {
        // Equidistance polish over active-set candidates.
        double f = eval_max_dist(pts, d, p, c.data(), dists);
        for (double band_rel : {1e-3, 1e-6, 1e-9}) {
          std::vector<int> active;
          for (int i = 0; i < n; ++i) {
            if (dists[i] >= f - band_rel * std::max(1.0, f)) active.push_back(i);
          }
          std::vector<double> cand;
          if (circumcenter(pts, d, active, cand)) {
            std::vector<double> dd(n);
            double fc = eval_max_dist(pts, d, p, cand.data(), dd);
            if (fc < f - 1e-15) {
              c = cand;
              f = fc;
              improved_by_polish = true;
            }
          }
        }
      }
      if (!improved_by_polish) {
        if (oc.f < best_f) {
          best_f = oc.f;
          best_stat = oc.stationarity;
          best.center = c;
        }
        break;
      }
      DescentOutcome rec = minimax_descent(pts, d, p, c, 20);
      if (rec.f < best_f) {
        best_f = rec.f;
        best_stat = rec.stationarity;
        best.center = c;
      }
    }
    bool certified = best_stat <= 1e-7 * std::max(1.0, best_f) ||
                     best_f - lower <= tol * std::max(1.0, best_f);
    if (certified) break;
  }
  best.radius = best_f;
  best.stationarity = best_stat;
  if (best_stat > 1e-3 * std::max(1.0, best_f) &&
      best_f - lower > 1e4 * tol * std::max(1.0, best_f)) {
    throw NumericError("chebyshev solver failed to certify a minimizer", lower, best_f);
  }
  return best;
}

// ------------------------- partition enumeration ---------------------------

struct Prefix {
  std::array<std::int8_t, 16> assign{};
  int len = 0;
};

// Restricted-growth prefixes of length `depth`: point 0 always lands in part
// 0, point i may join parts 0..min(used, k-1). Lexicographic order.
std::vector<Prefix> growth_prefixes(int n, int k, int min_count) {
  std::vector<Prefix> cur;
  Prefix root;
  root.assign[0] = 0;
  root.len = 1;
  cur.push_back(root);
  while (static_cast<int>(cur.size()) < min_count) {
    if (cur.front().len >= n) break;
    std::vector<Prefix> next;
    for (const Prefix& pref : cur) {
      int used = 0;
      for (int i = 0; i < pref.len; ++i) used = std::max(used, pref.assign[i] + 1);
      int top = std::min(used, k - 1);
      for (int j = 0; j <= top; ++j) {
        Prefix child = pref;
        child.assign[child.len] = static_cast<std::int8_t>(j);
        ++child.len;
        next.push_back(child);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

struct AlphaContext {
  int n = 0;
  int k = 0;
  const double* D = nullptr;

  double dist(int i, int j) const { return D[static_cast<std::size_t>(i) * n + j]; }
};

void alpha_recurse(const AlphaContext& ctx, int i, int used, std::int8_t* assign,
                   double* part_diam, double cur_max, double& best) {
  if (cur_max >= best) return;
  if (i == ctx.n) {
    best = cur_max;
    return;
  }
  int top = std::min(used, ctx.k - 1);
  for (int j = 0; j <= top; ++j) {
    double grown = part_diam[j];
    for (int l = 0; l < i; ++l) {
      if (assign[l] == j) grown = std::max(grown, ctx.dist(i, l));
    }
    double next_max = std::max(cur_max, grown);
    if (next_max >= best) continue;
    double saved = part_diam[j];
    part_diam[j] = grown;
    assign[i] = static_cast<std::int8_t>(j);
    alpha_recurse(ctx, i + 1, std::max(used, j + 1), assign, part_diam, next_max, best);
    part_diam[j] = saved;
  }
}

double alpha_greedy_bound(const AlphaContext& ctx) {
  std::array<std::int8_t, 16> assign{};
  std::array<double, 16> diam{};
  int used = 1;
  double cur_max = 0.0;
  for (int i = 1; i < ctx.n; ++i) {
    int best_j = 0;
    double best_grown = kInf;
    int top = std::min(used, ctx.k - 1);
    for (int j = 0; j <= top; ++j) {
      double grown = (j < used) ? diam[j] : 0.0;
      for (int l = 0; l < i; ++l) {
        if (assign[l] == j) grown = std::max(grown, ctx.dist(i, l));
      }
      if (grown < best_grown) {
        best_grown = grown;
        best_j = j;
      }
    }
    assign[i] = static_cast<std::int8_t>(best_j);
    diam[best_j] = std::max(diam[best_j], best_grown);
    used = std::max(used, best_j + 1);
    cur_max = std::max(cur_max, diam[best_j]);
  }
  return cur_max;
}

double run_alpha_from_prefix(const AlphaContext& ctx, const Prefix& pref, double bound) {
  std::array<std::int8_t, 16> assign{};
  std::array<double, 16> diam{};
  double cur_max = 0.0;
  int used = 0;
  for (int i = 0; i < pref.len; ++i) {
    int j = pref.assign[i];
    assign[i] = static_cast<std::int8_t>(j);
    for (int l = 0; l < i; ++l) {
      if (assign[l] == j) diam[j] = std::max(diam[j], ctx.dist(i, l));
    }
    used = std::max(used, j + 1);
    cur_max = std::max(cur_max, diam[j]);
  }
  double best = bound;
  alpha_recurse(ctx, pref.len, used, assign.data(), diam.data(), cur_max, best);
  return best;
}

// --------------------------------- chi -------------------------------------

using RadiusCache = std::unordered_map<std::uint32_t, double>;

struct ChiContext {
  int n = 0;
  int k = 0;
  const double* D = nullptr;
  const detail::DensePoints* X = nullptr;
  double p = 0.0;
  double solver_tol = 1e-8;

  double dist(int i, int j) const { return D[static_cast<std::size_t>(i) * n + j]; }

  double mask_radius(std::uint32_t mask, RadiusCache& cache) const {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    std::vector<const double*> rows;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) rows.push_back(X->row(i));
    }
    double r = solve_chebyshev_dense(rows, X->d, p, solver_tol).radius;
    cache.emplace(mask, r);
    return r;
  }
};

void chi_recurse(const ChiContext& ctx, int i, int used, std::int8_t* assign,
                 std::uint32_t* part_mask, double* part_diam, double half_max,
                 double& best, RadiusCache& cache) {
  if (half_max >= best) return;
  if (i == ctx.n) {
    // Evaluate parts by descending diameter so hopeless partitions bail early.
    std::array<int, 16> order{};
    for (int j = 0; j < used; ++j) order[j] = j;
    std::sort(order.begin(), order.begin() + used,
              [&](int a, int b) { return part_diam[a] > part_diam[b]; });
    double cost = 0.0;
    for (int t = 0; t < used; ++t) {
      cost = std::max(cost, ctx.mask_radius(part_mask[order[t]], cache));
      if (cost >= best) return;
    }
    best = cost;
    return;
  }
  int top = std::min(used, ctx.k - 1);
  for (int j = 0; j <= top; ++j) {
    double grown = part_diam[j];
    for (int l = 0; l < i; ++l) {
      if (assign[l] == j) grown = std::max(grown, ctx.dist(i, l));
    }
    double next_half = std::max(half_max, grown / 2.0);
    if (next_half >= best) continue;
    double saved_diam = part_diam[j];
    std::uint32_t saved_mask = part_mask[j];
    part_diam[j] = grown;
    part_mask[j] |= (1u << i);
    assign[i] = static_cast<std::int8_t>(j);
    chi_recurse(ctx, i + 1, std::max(used, j + 1), assign, part_mask, part_diam,
                next_half, best, cache);
    part_diam[j] = saved_diam;
    part_mask[j] = saved_mask;
  }
}

double run_chi_from_prefix(const ChiContext& ctx, const Prefix& pref, double bound,
                           RadiusCache& cache) {
  std::array<std::int8_t, 16> assign{};
  std::array<std::uint32_t, 16> mask{};
  std::array<double, 16> diam{};
  double half_max = 0.0;
  int used = 0;
  for (int i = 0; i < pref.len; ++i) {
    int j = pref.assign[i];
    assign[i] = static_cast<std::int8_t>(j);
    for (int l = 0; l < i; ++l) {
      if (assign[l] == j) diam[j] = std::max(diam[j], ctx.dist(i, l));
    }
    mask[j] |= (1u << i);
    used = std::max(used, j + 1);
    half_max = std::max(half_max, diam[j] / 2.0);
  }
  double best = bound;
  chi_recurse(ctx, pref.len, used, assign.data(), mask.data(), diam.data(), half_max,
              best, cache);
  return best;
}

// --------------------------------- beta ------------------------------------

struct BetaContext {
  int n = 0;
  int m = 0;
  const double* D = nullptr;

  double dist(int i, int j) const { return D[static_cast<std::size_t>(i) * n + j]; }
};

// Farthest-point greedy m-subset: a valid lower bound for the max-min value.
double beta_greedy_bound(const BetaContext& ctx) {
  int bi = 0;
  int bj = 1;
  for (int i = 0; i < ctx.n; ++i) {
    for (int j = i + 1; j < ctx.n; ++j) {
      if (ctx.dist(i, j) > ctx.dist(bi, bj)) {
        bi = i;
        bj = j;
      }
    }
  }
  std::vector<int> chosen = {bi, bj};
  while (static_cast<int>(chosen.size()) < ctx.m) {
    int pick = -1;
    double pick_score = -1.0;
    for (int i = 0; i < ctx.n; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      double score = kInf;
      for (int c : chosen) score = std::min(score, ctx.dist(i, c));
      if (score > pick_score) {
        pick_score = score;
        pick = i;
      }
    }
    chosen.push_back(pick);
  }
  double value = kInf;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      value = std::min(value, ctx.dist(chosen[a], chosen[b]));
    }
  }
  return value;
}

void beta_recurse(const BetaContext& ctx, int next, int chosen_count, int* chosen,
                  double cur_min, double& best) {
  if (chosen_count == ctx.m) {
    best = std::max(best, cur_min);
    return;
  }
  for (int i = next; i <= ctx.n - (ctx.m - chosen_count); ++i) {
    double new_min = cur_min;
    for (int t = 0; t < chosen_count; ++t) {
      new_min = std::min(new_min, ctx.dist(i, chosen[t]));
    }
    if (new_min <= best) continue;  // extensions only shrink the min
    chosen[chosen_count] = i;
    beta_recurse(ctx, i + 1, chosen_count + 1, chosen, new_min, best);
  }
}

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

double alpha_k(const FinitePointSet& P, int k, const SpaceSpec& space,
               const OracleBudget& budget, ExecMode mode) {
  space.validate();
  budget.validate();
  P.validate(space.eq_tol);
  if (k < 1) throw DomainError("alpha_k requires k >= 1");
  int n = static_cast<int>(P.points.size());
  if (n > budget.max_points) {
    throw BudgetError("alpha_k instance of " + std::to_string(n) +
                      " points exceeds budget max_points=" + std::to_string(budget.max_points));
  }
  if (k >= n) return 0.0;  // singleton parts
  if (k > budget.max_parts) {
    throw BudgetError("alpha_k with k=" + std::to_string(k) +
                      " exceeds budget max_parts=" + std::to_string(budget.max_parts));
  }
  std::vector<double> D = pairwise_distances(P, space.p);
  AlphaContext ctx{n, k, D.data()};
  double greedy = alpha_greedy_bound(ctx);
  if (mode == ExecMode::Serial) {
    Prefix root;
    root.assign[0] = 0;
    root.len = 1;
    return run_alpha_from_prefix(ctx, root, greedy);
  }
  std::vector<Prefix> prefixes = growth_prefixes(n, k, 8 * hardware_threads());
  double best = greedy;
#pragma omp parallel for schedule(dynamic) reduction(min : best)
  for (std::size_t idx = 0; idx < prefixes.size(); ++idx) {
    double local = run_alpha_from_prefix(ctx, prefixes[idx], std::min(best, greedy));
    best = std::min(best, local);
  }
  return best;
}

double chi_k(const FinitePointSet& P, int k, const SpaceSpec& space,
             const OracleBudget& budget, ExecMode mode) {
  space.validate();
  budget.validate();
  P.validate(space.eq_tol);
  if (k < 1) throw DomainError("chi_k requires k >= 1");
  int n = static_cast<int>(P.points.size());
  if (n > budget.max_points) {
    throw BudgetError("chi_k instance of " + std::to_string(n) +
                      " points exceeds budget max_points=" + std::to_string(budget.max_points));
  }
  if (k >= n) return 0.0;
  if (k > budget.max_parts) {
    throw BudgetError("chi_k with k=" + std::to_string(k) +
                      " exceeds budget max_parts=" + std::to_string(budget.max_parts));
  }
  std::vector<double> D = pairwise_distances(P, space.p);
  detail::DensePoints X = detail::densify(P);
  ChiContext ctx{n, k, D.data(), &X, space.p, budget.solver_tolerance};
  // Greedy upper bound: radius of the whole set works for any k.
  RadiusCache shared_cache;
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  double greedy = ctx.mask_radius(full, shared_cache) + 1e-15;
  if (mode == ExecMode::Serial) {
    Prefix root;
    root.assign[0] = 0;
    root.len = 1;
    return run_chi_from_prefix(ctx, root, greedy, shared_cache);
  }
  std::vector<Prefix> prefixes = growth_prefixes(n, k, 8 * hardware_threads());
  double best = greedy;
  bool failed = false;
  std::string failure;
  double fail_lo = 0.0;
  double fail_hi = 0.0;
#pragma omp parallel
  {
    RadiusCache cache = shared_cache;  // thread-local copy, no locking
#pragma omp for schedule(dynamic) reduction(min : best)
    for (std::size_t idx = 0; idx < prefixes.size(); ++idx) {
      try {
        double local = run_chi_from_prefix(ctx, prefixes[idx], std::min(best, greedy), cache);
        best = std::min(best, local);
      } catch (const NumericError& e) {
#pragma omp critical
        {
          failed = true;
          failure = e.what();
          fail_lo = e.lower();
          fail_hi = e.upper();
        }
      }
    }
  }
  if (failed) throw NumericError(failure, fail_lo, fail_hi);
  return best;
}

double beta_m(const FinitePointSet& P, int m, const SpaceSpec& space,
              const OracleBudget& budget, ExecMode mode) {
  space.validate();
  budget.validate();
  P.validate(space.eq_tol);
  int n = static_cast<int>(P.points.size());
  if (m < 2) throw DomainError("beta_m requires m >= 2");
  if (m > n) throw DomainError("beta_m requires m <= |P|");
  if (n > budget.max_points) {
    throw BudgetError("beta_m instance of " + std::to_string(n) +
                      " points exceeds budget max_points=" + std::to_string(budget.max_points));
  }
  std::vector<double> D = pairwise_distances(P, space.p);
  BetaContext ctx{n, m, D.data()};
  double greedy = beta_greedy_bound(ctx);
  double best = std::nextafter(greedy, 0.0);  // greedy value itself is attainable
  if (mode == ExecMode::Serial) {
    std::array<int, 16> chosen{};
    beta_recurse(ctx, 0, 0, chosen.data(), kInf, best);
    return best;
  }
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (int first = 0; first <= n - m; ++first) {
    std::array<int, 16> chosen{};
    chosen[0] = first;
    double local = std::max(best, std::nextafter(greedy, 0.0));
    beta_recurse(ctx, first + 1, 1, chosen.data(), kInf, local);
    best = std::max(best, local);
  }
  return best;
}

ChebyshevResult chebyshev_radius(const FinitePointSet& P, const SpaceSpec& space,
                                 const OracleBudget& budget) {
  space.validate();
  budget.validate();
  P.validate(space.eq_tol);
  int n = static_cast<int>(P.points.size());
  if (n > budget.max_points) {
    throw BudgetError("chebyshev instance of " + std::to_string(n) +
                      " points exceeds budget max_points=" + std::to_string(budget.max_points));
  }
  detail::DensePoints X = detail::densify(P);
  std::vector<const double*> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) rows.push_back(X.row(i));
  ChebySolution sol = solve_chebyshev_dense(rows, X.d, space.p, budget.solver_tolerance);
  std::vector<double> D = pairwise_distances(P, space.p);
  ChebyshevResult out;
  out.center = detail::sparsify(sol.center, X.coords);
  out.radius = sol.radius;
  out.stationarity = sol.stationarity;
  out.lower_bound = max_pairwise(D) / 2.0;
  return out;
}

}  // namespace mncx

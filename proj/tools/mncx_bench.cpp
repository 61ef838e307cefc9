#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mncx/moduli.hpp"
#include "mncx/oracles.hpp"
#include "mncx/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

mncx::FinitePointSet random_ball_points(int n, int dims, double p, std::uint64_t seed) {
  mncx::Rng rng(seed);
  mncx::FinitePointSet out;
  while (static_cast<int>(out.points.size()) < n) {
    mncx::SparseVector v;
    for (int d = 1; d <= dims; ++d) {
      if (rng.uniform01() < 0.6) v.set(d, rng.uniform(-1.0, 1.0));
    }
    double nm = mncx::norm(v, p);
    if (nm < 1e-6) continue;
    v *= rng.uniform(0.2, 1.0) / nm;
    out.points.push_back(std::move(v));
  }
  return out;
}

struct Row {
  std::string name;
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  bool agree = false;
};

void print_row(const Row& r) {
  double speedup = r.parallel_ms > 0.0 ? r.serial_ms / r.parallel_ms : 0.0;
  std::printf("%-28s %10.1f ms %10.1f ms   %.2fx   %s\n", r.name.c_str(), r.serial_ms,
              r.parallel_ms, speedup, r.agree ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial-vs-parallel agreement and timing for the exact kernels"};
  double p = 2.0;
  std::uint64_t seed = 7;
  app.add_option("--p", p, "space exponent")->capture_default_str();
  app.add_option("--seed", seed, "point-cloud seed")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  mncx::SpaceSpec sp{p, 4096, 1e-9};
  mncx::OracleBudget budget{16, 4, 1e-8};
  std::vector<Row> rows;

  {
    mncx::FinitePointSet pts = random_ball_points(12, 10, p, seed);
    Row r{"alpha_k (n=12, k=3)"};
    auto t0 = Clock::now();
    double vs = mncx::alpha_k(pts, 3, sp, budget, mncx::ExecMode::Serial);
    r.serial_ms = ms_since(t0);
    t0 = Clock::now();
    double vp = mncx::alpha_k(pts, 3, sp, budget, mncx::ExecMode::Parallel);
    r.parallel_ms = ms_since(t0);
    r.agree = vs == vp;
    rows.push_back(r);
  }
  {
    mncx::FinitePointSet pts = random_ball_points(10, 8, p, seed + 1);
    Row r{"chi_k (n=10, k=2)"};
    auto t0 = Clock::now();
    double vs = mncx::chi_k(pts, 2, sp, budget, mncx::ExecMode::Serial);
    r.serial_ms = ms_since(t0);
    t0 = Clock::now();
    double vp = mncx::chi_k(pts, 2, sp, budget, mncx::ExecMode::Parallel);
    r.parallel_ms = ms_since(t0);
    r.agree = vs == vp;
    rows.push_back(r);
  }
  {
    mncx::FinitePointSet pts = random_ball_points(14, 10, p, seed + 2);
    Row r{"beta_m (n=14, m=4)"};
    auto t0 = Clock::now();
    double vs = mncx::beta_m(pts, 4, sp, budget, mncx::ExecMode::Serial);
    r.serial_ms = ms_since(t0);
    t0 = Clock::now();
    double vp = mncx::beta_m(pts, 4, sp, budget, mncx::ExecMode::Parallel);
    r.parallel_ms = ms_since(t0);
    r.agree = vs == vp;
    rows.push_back(r);
  }
  {
    mncx::GridSpec grid{0.0, 0.9, 0.05};
    Row r{"modulus_curve (beta, 19 pts)"};
    mncx::EstimatorConfig serial_cfg{256, 1e-6, mncx::ExecMode::Serial};
    mncx::EstimatorConfig parallel_cfg{256, 1e-6, mncx::ExecMode::Parallel};
    auto t0 = Clock::now();
    mncx::ModulusCurve cs = mncx::modulus_curve(mncx::MeasureKind::Beta, sp, grid, true,
                                                serial_cfg);
    r.serial_ms = ms_since(t0);
    t0 = Clock::now();
    mncx::ModulusCurve cp = mncx::modulus_curve(mncx::MeasureKind::Beta, sp, grid, true,
                                                parallel_cfg);
    r.parallel_ms = ms_since(t0);
    r.agree = cs.points.size() == cp.points.size();
    if (r.agree) {
      for (std::size_t i = 0; i < cs.points.size(); ++i) {
        if (cs.points[i].numeric != cp.points[i].numeric) r.agree = false;
      }
    }
    rows.push_back(r);
  }

  std::printf("%-28s %13s %13s %7s   %s\n", "kernel", "serial", "parallel", "speedup",
              "agreement");
  bool all = true;
  for (const Row& r : rows) {
    print_row(r);
    all = all && r.agree;
  }
  std::printf("%s\n", all ? "all kernels agree bitwise between serial and parallel"
                          : "serial/parallel DISAGREEMENT detected");
  return all ? 0 : 1;
}

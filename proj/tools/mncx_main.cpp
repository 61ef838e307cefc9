#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mncx/hull.hpp"
#include "mncx/moduli.hpp"
#include "mncx/set_io.hpp"
#include "mncx/svg.hpp"
#include "mncx/verify.hpp"

namespace {

struct GlobalOpts {
  double p = 2.0;
  int dim = 4096;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  bool serial = false;
  int trunc_n = 256;
  int max_points = 12;
  int max_parts = 4;
  double solver_tol = 1e-8;

  mncx::SpaceSpec space() const { return mncx::SpaceSpec{p, dim, 1e-9}; }
  mncx::ExecMode mode() const {
    return serial ? mncx::ExecMode::Serial : mncx::ExecMode::Parallel;
  }
  mncx::EstimatorConfig est() const { return mncx::EstimatorConfig{trunc_n, tol, mode()}; }
  mncx::OracleBudget budget() const {
    return mncx::OracleBudget{max_points, max_parts, solver_tol};
  }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mncx::DomainError("cannot open output file: " + path);
  out << content;
}

int run_measure(const GlobalOpts& g, const std::string& expr, const std::string& kind_name,
                const std::string& oracle, int trunc) {
  mncx::SpaceSpec sp = g.space();
  mncx::MeasureKind kind = mncx::measure_kind_from_string(kind_name);
  mncx::StructuredSet s = mncx::parse_set(expr);
  double exact = mncx::measure_exact(s, kind, sp);
  std::printf("exact=%.8f\n", exact);
  try {
    std::printf("minimal=%s\n", mncx::is_minimal(s, kind, sp) ? "true" : "false");
  } catch (const mncx::DomainError&) {
    // minimality is undefined for this set; omit the line
  }
  if (!oracle.empty()) {
    if (oracle.size() < 3 || oracle[1] != '=' || (oracle[0] != 'k' && oracle[0] != 'm')) {
      throw mncx::DomainError("--oracle expects k=<int> (alpha/chi) or m=<int> (beta)");
    }
    int arg = std::stoi(oracle.substr(2));
    int count = std::min(trunc, mncx::truncation_capacity(s, sp));
    mncx::FinitePointSet pts = mncx::truncate(s, count, sp);
    double value = 0.0;
    if (oracle[0] == 'k') {
      if (kind == mncx::MeasureKind::Beta) {
        throw mncx::DomainError("beta uses subset oracles: pass m=<int>");
      }
      value = kind == mncx::MeasureKind::Alpha
                  ? mncx::alpha_k(pts, arg, sp, g.budget(), g.mode())
                  : mncx::chi_k(pts, arg, sp, g.budget(), g.mode());
    } else {
      if (kind != mncx::MeasureKind::Beta) {
        throw mncx::DomainError("k-partition oracles apply to alpha/chi: pass k=<int>");
      }
      value = mncx::beta_m(pts, arg, sp, g.budget(), g.mode());
    }
    std::printf("oracle=%.8f\n", value);
    std::printf("diff=%.8f\n", std::abs(exact - value));
  }
  return 0;
}

int run_hull(const GlobalOpts& g, const std::string& expr, int trunc) {
  mncx::SpaceSpec sp = g.space();
  mncx::StructuredSet s = mncx::parse_set(expr);
  int count = std::min(trunc, mncx::truncation_capacity(s, sp));
  mncx::FinitePointSet pts = mncx::truncate(s, count, sp);
  mncx::HullDistanceResult r = mncx::hull_distance(pts, sp, g.tol);
  std::printf("value=%.10f\n", r.value);
  std::printf("dual_bound=%.10f\n", r.dual_bound);
  std::printf("gap=%.3e\n", r.gap);
  std::printf("iterations=%d\n", r.iterations);
  return 0;
}

int run_modulus(const GlobalOpts& g, const std::string& kind_name, bool restrict_minimal,
                const std::string& grid_str, const std::string& format,
                const std::string& out_path) {
  mncx::MeasureKind kind = mncx::measure_kind_from_string(kind_name);
  mncx::GridSpec grid = mncx::GridSpec::parse(grid_str);
  mncx::ModulusCurve curve =
      mncx::modulus_curve(kind, g.space(), grid, restrict_minimal, g.est());
  std::string content;
  if (format == "csv") {
    content = mncx::curve_to_csv(curve);
  } else if (format == "json") {
    content = mncx::curve_to_json(curve);
  } else {
    content = mncx::curve_to_svg(curve);
  }
  emit(out_path, content);
  return 0;
}

int run_characteristic(const GlobalOpts& g, const std::string& kind_name,
                       bool restrict_minimal, const std::string& grid_str,
                       double zero_tol) {
  mncx::MeasureKind kind = mncx::measure_kind_from_string(kind_name);
  mncx::GridSpec grid = mncx::GridSpec::parse(grid_str);
  mncx::ModulusCurve curve =
      mncx::modulus_curve(kind, g.space(), grid, restrict_minimal, g.est());
  mncx::CharacteristicEstimate est = mncx::characteristic(curve, zero_tol);
  std::printf("characteristic=%.8f\n", est.value);
  std::printf("kind=%s\n", mncx::to_string(est.kind));
  std::printf("restricted_minimal=%s\n", est.restricted_minimal ? "true" : "false");
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite, const std::string& format,
               const std::string& out_path, int trials, double zero_tol,
               double analytic_step, double estimator_step) {
  mncx::VerifyConfig cfg;
  cfg.space = g.space();
  cfg.est = g.est();
  cfg.budget = g.budget();
  cfg.seed = g.seed;
  cfg.trials = trials;
  cfg.zero_tol = zero_tol;
  cfg.analytic_step = analytic_step;
  cfg.estimator_step = estimator_step;
  mncx::VerificationReport report = mncx::run_suite(cfg, suite);
  std::string content = format == "json" ? mncx::report_to_json(report)
                                         : mncx::report_to_text(report);
  emit(out_path, content);
  return report.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "noncompactness measures and moduli of noncompact convexity on lp sequence spaces"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; command-line flags override it");

  GlobalOpts g;
  app.add_option("--p", g.p, "space exponent p > 1 (closed forms need p >= 2)")
      ->capture_default_str();
  app.add_option("--dim", g.dim, "coordinate budget for truncations")->capture_default_str();
  app.add_option("--tol", g.tol, "hull/estimator tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized probes")->capture_default_str();
  app.add_flag("--serial", g.serial, "run kernels on the serial reference path");
  app.add_option("--trunc-n", g.trunc_n, "points per hull solve in the estimator")
      ->capture_default_str();
  app.add_option("--max-points", g.max_points, "oracle budget: max points")
      ->capture_default_str();
  app.add_option("--max-parts", g.max_parts, "oracle budget: max partition size")
      ->capture_default_str();
  app.add_option("--solver-tol", g.solver_tol, "oracle budget: center-solver tolerance")
      ->capture_default_str();

  // measure
  auto* m = app.add_subcommand("measure", "exact measure of a structured set");
  m->fallthrough();
  std::string m_expr, m_kind, m_oracle;
  int m_trunc = 12;
  m->add_option("set", m_expr, "set expression, e.g. tail(center=[0], r=1, start=1)")
      ->required();
  m->add_option("--kind", m_kind, "alpha|chi|beta")
      ->required()
      ->check(CLI::IsMember({"alpha", "chi", "beta"}));
  m->add_option("--oracle", m_oracle, "cross-check with a finite oracle: k=<int> or m=<int>");
  m->add_option("--trunc", m_trunc, "points in the oracle truncation")->capture_default_str();

  // hull-dist
  auto* h = app.add_subcommand("hull-dist", "distance from the origin to a truncation's hull");
  h->fallthrough();
  std::string h_expr;
  int h_trunc = 64;
  h->add_option("set", h_expr, "set expression")->required();
  h->add_option("--trunc", h_trunc, "points in the truncation")->capture_default_str();

  // modulus
  auto* mo = app.add_subcommand("modulus", "modulus-of-noncompact-convexity curve");
  mo->fallthrough();
  std::string mo_kind, mo_grid = "0:0.9:0.1", mo_format = "csv", mo_out;
  bool mo_restrict = false;
  mo->add_option("--kind", mo_kind, "alpha|chi|beta")
      ->required()
      ->check(CLI::IsMember({"alpha", "chi", "beta"}));
  mo->add_flag("--restrict-minimal", mo_restrict, "only minimal witness families");
  mo->add_option("--grid", mo_grid, "epsilon grid start:stop:step")->capture_default_str();
  mo->add_option("--format", mo_format, "csv|json|svg")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  mo->add_option("-o,--output", mo_out, "write to file instead of stdout");

  // characteristic
  auto* ch = app.add_subcommand("characteristic",
                                "largest epsilon whose modulus estimate stays at zero");
  ch->fallthrough();
  std::string ch_kind, ch_grid = "0:0.9:0.05";
  bool ch_restrict = false;
  double ch_zero_tol = 1e-4;
  ch->add_option("--kind", ch_kind, "alpha|chi|beta")
      ->required()
      ->check(CLI::IsMember({"alpha", "chi", "beta"}));
  ch->add_flag("--restrict-minimal", ch_restrict, "only minimal witness families");
  ch->add_option("--grid", ch_grid, "epsilon grid start:stop:step")->capture_default_str();
  ch->add_option("--zero-tol", ch_zero_tol, "threshold treated as zero")
      ->capture_default_str();

  // verify
  auto* v = app.add_subcommand("verify", "run the invariant verification suite");
  v->fallthrough();
  std::string v_suite = "all", v_format = "text", v_out;
  int v_trials = 1000;
  double v_zero_tol = 1e-4, v_astep = 0.02, v_estep = 0.05;
  v->add_option("--suite", v_suite, "'all' or one check name")->capture_default_str();
  v->add_option("--format", v_format, "text|json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  v->add_option("-o,--output", v_out, "write to file instead of stdout");
  v->add_option("--trials", v_trials, "randomized-probe sample count")->capture_default_str();
  v->add_option("--zero-tol", v_zero_tol, "characteristic zero threshold")
      ->capture_default_str();
  v->add_option("--analytic-step", v_astep, "closed-form scan step")->capture_default_str();
  v->add_option("--estimator-step", v_estep, "estimator scan step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (m->parsed()) return run_measure(g, m_expr, m_kind, m_oracle, m_trunc);
    if (h->parsed()) return run_hull(g, h_expr, h_trunc);
    if (mo->parsed()) return run_modulus(g, mo_kind, mo_restrict, mo_grid, mo_format, mo_out);
    if (ch->parsed()) {
      return run_characteristic(g, ch_kind, ch_restrict, ch_grid, ch_zero_tol);
    }
    if (v->parsed()) {
      return run_verify(g, v_suite, v_format, v_out, v_trials, v_zero_tol, v_astep, v_estep);
    }
  } catch (const mncx::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s (bracket [%.10g, %.10g])\n", e.what(),
                 e.lower(), e.upper());
    return 3;
  } catch (const mncx::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const mncx::BudgetError& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 2;
  } catch (const mncx::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

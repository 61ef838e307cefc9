#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mncx/moduli.hpp"

namespace mncx {

struct CheckResult {
  std::string name;
  std::string claim_ref;  // which established claim the check exercises
  bool pass = false;      // pass <=> margin >= 0
  double margin = 0.0;    // worst slack across the check's assertions
  std::string details;
  double runtime_ms = 0.0;
};

struct VerifyConfig {
  SpaceSpec space;
  EstimatorConfig est;
  OracleBudget budget;
  std::uint64_t seed = 42;
  int trials = 1000;          // randomized-property sample count
  double zero_tol = 1e-4;     // characteristic zero threshold
  double analytic_step = 0.02;   // grid step for closed-form scans
  double estimator_step = 0.05;  // grid step for estimator scans
};

struct VerificationReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
};

// Randomized measure-axiom probes on structured sets (zero iff finite,
// union-max, homogeneity) plus an adversarial 16-component union whose
// union-max value is cross-checked against the finite oracles.
CheckResult check_axioms(const VerifyConfig& cfg);

// Analytic ordering clarkson <= alpha form <= beta form, and the estimated
// minimal-witness moduli ordered beta <= alpha <= chi.
CheckResult check_chain(const VerifyConfig& cfg);

// Minimal-restricted alpha estimate exceeds the alpha closed form by the
// beta-alpha closed-form gap (up to truncation slack) across the grid.
CheckResult check_strict_gap(const VerifyConfig& cfg);

// Minimal-alpha estimate at eps equals the minimal-chi estimate at
// 2^(-1/p) eps, and the chi estimate curve is subhomogeneous.
CheckResult check_rescaling_identity(const VerifyConfig& cfg);

// The alpha and beta closed forms separate by >= 0.05 somewhere at eps >= 0.8,
// which rules out a minimal-witness reduction for the alpha measure.
CheckResult check_nonminimalizability_alpha(const VerifyConfig& cfg);

// Halving the grid step shrinks the largest adjacent jump of each modulus
// curve by factor <= 0.6 away from the right end; analytic jumps respect the
// derivative bound times the step.
CheckResult check_continuity(const VerifyConfig& cfg);

// Minimality implications across measure kinds and the alpha = 2^(1/p) chi
// identity on alpha-minimal sets, over randomized structured sets.
CheckResult check_minimality_lemmas(const VerifyConfig& cfg);

// Finite oracles hit their exact symbolic values on truncated families and
// the hull solver matches the tail-truncation distance formula.
CheckResult check_oracle_convergence(const VerifyConfig& cfg);

std::vector<std::string> check_names();
VerificationReport run_all(const VerifyConfig& cfg);
// name is "all" or one of check_names(); throws DomainError on unknown names.
VerificationReport run_suite(const VerifyConfig& cfg, const std::string& name);

std::string report_to_json(const VerificationReport& report, bool include_runtime = true);
std::string report_to_text(const VerificationReport& report);

}  // namespace mncx

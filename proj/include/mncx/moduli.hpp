#pragma once

#include <optional>
#include <string>

#include "mncx/oracles.hpp"
#include "mncx/structured_set.hpp"

namespace mncx {

// Closed-form modulus of noncompact convexity for the given measure kind on
// the p-space (p >= 2). No closed form exists for Chi: NoClosedFormError.
double closed_form_modulus(MeasureKind kind, const SpaceSpec& space, double eps);

// Numeric target curve 1 - (1 - eps^p)^(1/p) that the Chi estimator should
// approach; a derived reference, not a published closed form.
double chi_reference_target(const SpaceSpec& space, double eps);

// Clarkson modulus of convexity of the p-space, p >= 2.
double clarkson_delta(const SpaceSpec& space, double eps);

enum class WitnessFamily { MinimalTail, SphereTail };

const char* to_string(WitnessFamily family);

// Witness inside the unit ball whose `kind`-measure equals eps + margin:
// a tail family (minimal) or sphere tail (non-minimal) with center a*e_1,
// a = (1 - b^p)^(1/p). Throws DomainError when no such radius b <= 1 exists.
StructuredSet witness_make(MeasureKind kind, WitnessFamily family, double eps,
                           double margin, const SpaceSpec& space);

// Arithmetic grid {start + i*step}; step == 0 or stop <= start collapses the
// grid to the single value {start}.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
  static GridSpec parse(std::string_view text);  // "start:stop:step"
};

struct EstimatorConfig {
  int trunc_n = 256;  // truncation size for hull solves (>= 8)
  double tol = 1e-6;
  ExecMode mode = ExecMode::Parallel;
};

struct ModulusPoint {
  double epsilon = 0.0;
  std::optional<double> analytic;  // closed form when one exists and p >= 2
  double numeric = 0.0;            // witness-optimization estimate
  // Exact finite-truncation shortfall of the winning witness family: the
  // amount by which truncation at trunc_n points depresses the estimate.
  std::optional<double> slack;
  std::optional<StructuredSet> witness;  // winning witness at smallest margin
  bool restricted_minimal = false;
  std::optional<std::string> error;  // set when estimation failed at this eps
};

struct ModulusCurve {
  MeasureKind kind = MeasureKind::Beta;
  bool restricted_minimal = false;
  SpaceSpec space;
  EstimatorConfig config;
  std::vector<ModulusPoint> points;
};

// Witness-set estimate of the modulus at eps: builds witnesses with measure
// eps + margin over a decreasing margin schedule, measures 1 - hull_distance
// on trunc_n-point truncations, and extrapolates the two smallest margins
// linearly to margin 0. restrict_minimal limits the search to minimal
// witnesses. Estimation failures propagate (NumericError keeps its bracket).
ModulusPoint estimate_modulus(MeasureKind kind, const SpaceSpec& space, double eps,
                              bool restrict_minimal, const EstimatorConfig& config = {});

// Pointwise estimates over the grid; per-point failures are recorded in the
// point's error field and the rest of the curve is still produced.
ModulusCurve modulus_curve(MeasureKind kind, const SpaceSpec& space, const GridSpec& grid,
                           bool restrict_minimal, const EstimatorConfig& config = {});

struct CharacteristicEstimate {
  double value = 0.0;
  MeasureKind kind = MeasureKind::Beta;
  bool restricted_minimal = false;
};

// Largest grid epsilon whose estimate stays within zero_tol of zero (0 when
// none does).
CharacteristicEstimate characteristic(const ModulusCurve& curve, double zero_tol);

// Exact depression of the tail-witness estimate caused by truncating the
// witness to trunc_n points: (a^p + b^p N^(1-p))^(1/p) - a at the witness
// radius b for this kind/eps.
double convergence_slack(MeasureKind kind, const SpaceSpec& space, double eps, int trunc_n);

// Column layout: epsilon,analytic,numeric,witness. Bit-stable formatting.
std::string curve_to_csv(const ModulusCurve& curve);
std::string curve_to_json(const ModulusCurve& curve);

}  // namespace mncx

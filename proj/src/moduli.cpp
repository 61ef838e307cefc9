#include "mncx/moduli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "mncx/hull.hpp"
#include "mncx/set_io.hpp"

namespace mncx {

namespace {

void require_closed_form_space(const SpaceSpec& space) {
  space.validate();
  if (space.p < 2.0) {
    throw DomainError("closed forms are pinned for p >= 2 only");
  }
}

double safe_root(double base, double p) {
  // (base)^(1/p) with tiny negative round-off clamped away
  if (base < 0.0) {
    if (base < -1e-12) throw DomainError("modulus argument outside its domain");
    base = 0.0;
  }
  return std::pow(base, 1.0 / p);
}

// Tail radius b making the family's `kind`-measure equal `measure`.
double witness_radius(MeasureKind kind, WitnessFamily family, double measure, double p) {
  double inv_root2 = std::pow(2.0, -1.0 / p);
  switch (family) {
    case WitnessFamily::MinimalTail:
      return kind == MeasureKind::Chi ? measure : measure * inv_root2;
    case WitnessFamily::SphereTail:
      switch (kind) {
        case MeasureKind::Alpha:
          return measure / 2.0;
        case MeasureKind::Chi:
          return measure;
        case MeasureKind::Beta:
          return measure * inv_root2;
      }
  }
  throw DomainError("unknown witness family");
}

// Largest measure any unit-ball witness of this family attains (radius b = 1).
double family_max_measure(MeasureKind kind, WitnessFamily family, double p) {
  double root2 = std::pow(2.0, 1.0 / p);
  switch (family) {
    case WitnessFamily::MinimalTail:
      return kind == MeasureKind::Chi ? 1.0 : root2;
    case WitnessFamily::SphereTail:
      switch (kind) {
        case MeasureKind::Alpha:
          return 2.0;
        case MeasureKind::Chi:
          return 1.0;
        case MeasureKind::Beta:
          return root2;
      }
  }
  throw DomainError("unknown witness family");
}

struct FamilyEstimate {
  double value = std::numeric_limits<double>::infinity();
  StructuredSet witness{FiniteSet{}};  // replaced before use
  WitnessFamily family = WitnessFamily::MinimalTail;
};

FamilyEstimate estimate_family(MeasureKind kind, WitnessFamily family,
                               const SpaceSpec& space, double eps,
                               const EstimatorConfig& config) {
  double avail = family_max_measure(kind, family, space.p) - eps;
  if (!(avail > 0.0)) {
    throw DomainError("epsilon at or beyond this family's largest measure");
  }
  std::array<double, 3> margins{std::min(1e-2, avail / 2.0),
                                std::min(1e-3, avail / 20.0),
                                std::min(config.tol, avail / 200.0)};
  if (margins[1] >= margins[0]) margins[1] = margins[0] / 10.0;
  if (margins[2] >= margins[1]) margins[2] = margins[1] / 10.0;

  std::array<double, 3> vals{};
  StructuredSet witness_at_smallest = witness_make(kind, family, eps, margins[2], space);
  for (int i = 0; i < 3; ++i) {
    StructuredSet w = witness_make(kind, family, eps, margins[i], space);
    int count = std::min(config.trunc_n, truncation_capacity(w, space));
    FinitePointSet pts = truncate(w, count, space);
    HullDistanceResult hd = hull_distance(pts, space, config.tol);
    vals[i] = 1.0 - hd.value;
  }
  // Linear extrapolation of the two smallest margins down to margin 0.
  double m2 = margins[1];
  double m3 = margins[2];
  double slope = (vals[1] - vals[2]) / (m2 - m3);
  double v0 = vals[2] - slope * m3;
  v0 = std::clamp(v0, 0.0, 1.0);
  FamilyEstimate out;
  out.value = v0;
  out.witness = std::move(witness_at_smallest);
  out.family = family;
  return out;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

double closed_form_modulus(MeasureKind kind, const SpaceSpec& space, double eps) {
  require_closed_form_space(space);
  if (!(eps >= 0.0)) throw DomainError("epsilon must be nonnegative");
  double ubm = unit_ball_measure(kind, space);
  if (eps > ubm + space.eq_tol) {
    throw DomainError("epsilon exceeds the unit-ball measure");
  }
  double p = space.p;
  switch (kind) {
    case MeasureKind::Alpha:
      return 1.0 - safe_root(1.0 - std::pow(eps / 2.0, p), p);
    case MeasureKind::Beta:
      return 1.0 - safe_root(1.0 - std::pow(eps, p) / 2.0, p);
    case MeasureKind::Chi:
      throw NoClosedFormError("no closed form is pinned for the Hausdorff modulus");
  }
  throw DomainError("unknown measure kind");
}

double chi_reference_target(const SpaceSpec& space, double eps) {
  require_closed_form_space(space);
  if (!(eps >= 0.0) || eps > 1.0 + space.eq_tol) {
    throw DomainError("the Hausdorff reference target lives on [0, 1]");
  }
  return 1.0 - safe_root(1.0 - std::pow(std::min(eps, 1.0), space.p), space.p);
}

double clarkson_delta(const SpaceSpec& space, double eps) {
  require_closed_form_space(space);
  if (!(eps >= 0.0) || eps > 2.0 + space.eq_tol) {
    throw DomainError("the convexity modulus lives on [0, 2]");
  }
  return 1.0 - safe_root(1.0 - std::pow(std::min(eps, 2.0) / 2.0, space.p), space.p);
}

const char* to_string(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::MinimalTail:
      return "minimal-tail";
    case WitnessFamily::SphereTail:
      return "sphere-tail";
  }
  return "?";
}

StructuredSet witness_make(MeasureKind kind, WitnessFamily family, double eps,
                           double margin, const SpaceSpec& space) {
  space.validate();
  if (!(eps >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (!(margin > 0.0)) throw DomainError("witness margin must be positive");
  double measure = eps + margin;
  double b = witness_radius(kind, family, measure, space.p);
  if (b > 1.0 + space.eq_tol) {
    throw DomainError("no unit-ball witness reaches this measure");
  }
  b = std::min(b, 1.0);
  double a = safe_root(1.0 - std::pow(b, space.p), space.p);
  SparseVector center = SparseVector::basis(1, a);
  if (family == WitnessFamily::MinimalTail) {
    return TailFamily{std::move(center), b, 2};
  }
  return SphereTail{std::move(center), b, 2};
}

std::vector<double> GridSpec::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw DomainError("grid endpoints must be finite");
  }
  if (step <= 0.0 || stop <= start) return {start};
  std::vector<double> out;
  int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(start + i * step);
  return out;
}

GridSpec GridSpec::parse(std::string_view text) {
  auto parse_field = [&](std::string_view field, std::size_t offset) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError("expected a real number in grid spec", offset);
    }
    return v;
  };
  std::vector<std::string_view> fields;
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  while (true) {
    std::size_t colon = text.find(':', pos);
    if (colon == std::string_view::npos) {
      fields.push_back(text.substr(pos));
      offsets.push_back(pos);
      break;
    }
    fields.push_back(text.substr(pos, colon - pos));
    offsets.push_back(pos);
    pos = colon + 1;
  }
  GridSpec g;
  if (fields.size() == 1) {
    g.start = parse_field(fields[0], offsets[0]);
    g.stop = g.start;
    g.step = 0.0;
    return g;
  }
  if (fields.size() != 3) {
    throw ParseError("grid spec must be start:stop:step or a single value", 0);
  }
  g.start = parse_field(fields[0], offsets[0]);
  g.stop = parse_field(fields[1], offsets[1]);
  g.step = parse_field(fields[2], offsets[2]);
  return g;
}

double convergence_slack(MeasureKind kind, const SpaceSpec& space, double eps, int trunc_n) {
  space.validate();
  if (trunc_n < 2) throw DomainError("truncation needs at least two points");
  if (!(eps >= 0.0)) throw DomainError("epsilon must be nonnegative");
  double p = space.p;
  double b = witness_radius(kind, WitnessFamily::MinimalTail, eps, p);
  if (b > 1.0) throw DomainError("epsilon beyond the tail-witness domain");
  double a = safe_root(1.0 - std::pow(b, p), p);
  double truncated = std::pow(std::pow(a, p) + std::pow(b, p) * std::pow(double(trunc_n), 1.0 - p), 1.0 / p);
  return truncated - a;
}

ModulusPoint estimate_modulus(MeasureKind kind, const SpaceSpec& space, double eps,
                              bool restrict_minimal, const EstimatorConfig& config) {
  space.validate();
  if (config.trunc_n < 8) throw DomainError("estimator truncation must be >= 8 points");
  if (!(config.tol > 0.0)) throw DomainError("estimator tolerance must be positive");
  if (!(eps >= 0.0)) throw DomainError("epsilon must be nonnegative");

  std::vector<WitnessFamily> families{WitnessFamily::MinimalTail};
  if (!restrict_minimal) families.push_back(WitnessFamily::SphereTail);

  double reach = 0.0;
  for (WitnessFamily f : families) {
    reach = std::max(reach, family_max_measure(kind, f, space.p));
  }
  if (!(reach - eps > 0.0)) {
    throw DomainError("epsilon at or beyond the largest witness measure");
  }

  FamilyEstimate best;
  bool any_family = false;
  for (WitnessFamily f : families) {
    FamilyEstimate e;
    try {
      e = estimate_family(kind, f, space, eps, config);
    } catch (const DomainError&) {
      continue;  // this family has no unit-ball witness at this epsilon
    }
    any_family = true;
    if (e.value < best.value) best = std::move(e);
  }
  if (!any_family) {
    throw DomainError("no witness family reaches this epsilon inside the unit ball");
  }

  ModulusPoint out;
  out.epsilon = eps;
  out.restricted_minimal = restrict_minimal;
  out.numeric = best.value;
  out.witness = std::move(best.witness);
  if (best.family == WitnessFamily::MinimalTail) {
    out.slack = convergence_slack(kind, space, eps, config.trunc_n);
  } else {
    out.slack = 0.0;  // sphere truncations have no tail shortfall
  }
  if (kind != MeasureKind::Chi && space.p >= 2.0) {
    out.analytic = closed_form_modulus(kind, space, eps);
  }
  return out;
}

ModulusCurve modulus_curve(MeasureKind kind, const SpaceSpec& space, const GridSpec& grid,
                           bool restrict_minimal, const EstimatorConfig& config) {
  space.validate();
  std::vector<double> eps_values = grid.values();
  ModulusCurve curve;
  curve.kind = kind;
  curve.restricted_minimal = restrict_minimal;
  curve.space = space;
  curve.config = config;
  curve.points.resize(eps_values.size());

  auto compute_one = [&](std::size_t i) {
    try {
      curve.points[i] = estimate_modulus(kind, space, eps_values[i], restrict_minimal, config);
    } catch (const std::exception& ex) {
      ModulusPoint bad;
      bad.epsilon = eps_values[i];
      bad.restricted_minimal = restrict_minimal;
      bad.numeric = std::numeric_limits<double>::quiet_NaN();
      bad.error = ex.what();
      curve.points[i] = std::move(bad);
    }
  };

  if (config.mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < eps_values.size(); ++i) compute_one(i);
  } else {
    for (std::size_t i = 0; i < eps_values.size(); ++i) compute_one(i);
  }
  return curve;
}

CharacteristicEstimate characteristic(const ModulusCurve& curve, double zero_tol) {
  if (curve.points.empty()) throw DomainError("characteristic needs a nonempty curve");
  if (!(zero_tol >= 0.0)) throw DomainError("zero tolerance must be nonnegative");
  CharacteristicEstimate est;
  est.kind = curve.kind;
  est.restricted_minimal = curve.restricted_minimal;
  est.value = 0.0;
  for (const ModulusPoint& pt : curve.points) {
    if (pt.error || !std::isfinite(pt.numeric)) continue;
    if (pt.numeric <= zero_tol && pt.epsilon > est.value) est.value = pt.epsilon;
  }
  return est;
}

std::string curve_to_csv(const ModulusCurve& curve) {
  std::ostringstream os;
  os << "epsilon,analytic,numeric,witness\n";
  for (const ModulusPoint& pt : curve.points) {
    os << fmt12(pt.epsilon) << ',';
    if (pt.analytic) os << fmt12(*pt.analytic);
    os << ',';
    os << (std::isfinite(pt.numeric) ? fmt12(pt.numeric) : std::string("nan")) << ',';
    if (pt.error) {
      os << "\"error: " << *pt.error << '"';
    } else if (pt.witness) {
      os << '"' << to_text(*pt.witness) << '"';
    }
    os << '\n';
  }
  return os.str();
}

std::string curve_to_json(const ModulusCurve& curve) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(curve.kind);
  j["restricted_minimal"] = curve.restricted_minimal;
  j["p"] = curve.space.p;
  j["trunc_n"] = curve.config.trunc_n;
  j["tol"] = curve.config.tol;
  j["points"] = nlohmann::ordered_json::array();
  for (const ModulusPoint& pt : curve.points) {
    nlohmann::ordered_json q;
    q["epsilon"] = pt.epsilon;
    if (pt.analytic) {
      q["analytic"] = *pt.analytic;
    } else {
      q["analytic"] = nullptr;
    }
    if (std::isfinite(pt.numeric)) {
      q["numeric"] = pt.numeric;
    } else {
      q["numeric"] = nullptr;
    }
    if (pt.slack) {
      q["slack"] = *pt.slack;
    } else {
      q["slack"] = nullptr;
    }
    if (pt.witness) {
      q["witness"] = to_text(*pt.witness);
    } else {
      q["witness"] = nullptr;
    }
    if (pt.error) {
      q["error"] = *pt.error;
    } else {
      q["error"] = nullptr;
    }
    j["points"].push_back(std::move(q));
  }
  return j.dump(2);
}

}  // namespace mncx

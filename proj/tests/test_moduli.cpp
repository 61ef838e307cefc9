#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mncx/moduli.hpp"
#include "mncx/set_io.hpp"
#include "mncx/svg.hpp"

using namespace mncx;

namespace {

const SpaceSpec kP2{2.0, 4096, 1e-9};
const SpaceSpec kP3{3.0, 4096, 1e-9};

constexpr double kBetaAtOne = 0.2928932188134524;    // 1 - sqrt(1/2)
constexpr double kAlphaAtOne = 0.1339745962155614;   // 1 - sqrt(3/4)
constexpr double kSlack256 = 0.001379721860617078;   // tail truncation shortfall
constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

TEST_SUITE("moduli") {

TEST_CASE("closed forms at pinned values") {
  CHECK(closed_form_modulus(MeasureKind::Beta, kP2, 1.0) ==
        doctest::Approx(kBetaAtOne).epsilon(1e-14));
  CHECK(closed_form_modulus(MeasureKind::Alpha, kP2, 1.0) ==
        doctest::Approx(kAlphaAtOne).epsilon(1e-14));
  CHECK(closed_form_modulus(MeasureKind::Beta, kP2, 0.5) ==
        doctest::Approx(0.06458565330651467).epsilon(1e-13));
  CHECK(closed_form_modulus(MeasureKind::Alpha, kP3, 1.0) ==
        doctest::Approx(0.04353440861380542).epsilon(1e-13));
  CHECK(closed_form_modulus(MeasureKind::Beta, kP3, 1.0) ==
        doctest::Approx(0.2062994740159002).epsilon(1e-13));
  CHECK(closed_form_modulus(MeasureKind::Beta, kP2, 0.0) == 0.0);

  // The alpha modulus coincides with the convexity modulus.
  for (double eps : {0.2, 0.7, 1.2}) {
    CHECK(closed_form_modulus(MeasureKind::Alpha, kP2, eps) ==
          doctest::Approx(clarkson_delta(kP2, eps)).epsilon(1e-15));
  }
}

TEST_CASE("closed form domain guards") {
  CHECK_THROWS_AS(closed_form_modulus(MeasureKind::Chi, kP2, 0.5), NoClosedFormError);
  SpaceSpec p15{1.5, 4096, 1e-9};
  CHECK_THROWS_AS(closed_form_modulus(MeasureKind::Beta, p15, 0.5), DomainError);
  CHECK_THROWS_AS(closed_form_modulus(MeasureKind::Beta, kP2, -0.1), DomainError);
  CHECK_THROWS_AS(closed_form_modulus(MeasureKind::Beta, kP2, 1.5), DomainError);
  CHECK_THROWS_AS(closed_form_modulus(MeasureKind::Alpha, kP2, 2.1), DomainError);
  CHECK_THROWS_AS(clarkson_delta(kP2, 2.1), DomainError);
}

TEST_CASE("chi reference target") {
  CHECK(chi_reference_target(kP2, 0.6) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(chi_reference_target(kP2, 0.0) == 0.0);
  CHECK_THROWS_AS(chi_reference_target(kP2, 1.1), DomainError);
}

TEST_CASE("witness construction") {
  StructuredSet w =
      witness_make(MeasureKind::Alpha, WitnessFamily::MinimalTail, 1.0, 1e-3, kP2);
  CHECK(measure_exact(w, MeasureKind::Alpha, kP2) == doctest::Approx(1.001).epsilon(1e-12));
  CHECK(validate_in_unit_ball(w, kP2));
  CHECK(is_minimal(w, MeasureKind::Alpha, kP2));
  CHECK(to_text(w).rfind("tail(", 0) == 0);

  StructuredSet s =
      witness_make(MeasureKind::Alpha, WitnessFamily::SphereTail, 1.0, 1e-3, kP2);
  CHECK(measure_exact(s, MeasureKind::Alpha, kP2) == doctest::Approx(1.001).epsilon(1e-12));
  CHECK(validate_in_unit_ball(s, kP2));
  CHECK_FALSE(is_minimal(s, MeasureKind::Alpha, kP2));
  CHECK(to_text(s).rfind("sphere(", 0) == 0);

  StructuredSet c =
      witness_make(MeasureKind::Chi, WitnessFamily::MinimalTail, 0.5, 1e-4, kP2);
  CHECK(measure_exact(c, MeasureKind::Chi, kP2) == doctest::Approx(0.5001).epsilon(1e-12));

  // Measures above the family ceiling admit no in-ball witness.
  CHECK_THROWS_AS(witness_make(MeasureKind::Chi, WitnessFamily::MinimalTail, 0.999, 0.1, kP2),
                  DomainError);
  CHECK_THROWS_AS(
      witness_make(MeasureKind::Alpha, WitnessFamily::MinimalTail, kSqrt2, 1e-3, kP2),
      DomainError);
}

TEST_CASE("grid spec") {
  GridSpec g{0.0, 1.0, 0.25};
  auto v = g.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == doctest::Approx(1.0).epsilon(1e-12));

  GridSpec collapsed{0.5, 0.5, 0.1};
  CHECK(collapsed.values() == std::vector<double>{0.5});
  GridSpec zero_step{0.5, 0.9, 0.0};
  CHECK(zero_step.values() == std::vector<double>{0.5});

  GridSpec parsed = GridSpec::parse("0:0.9:0.1");
  CHECK(parsed.start == 0.0);
  CHECK(parsed.stop == 0.9);
  CHECK(parsed.step == 0.1);
  CHECK(GridSpec::parse("0.25").values() == std::vector<double>{0.25});
  CHECK_THROWS_AS(GridSpec::parse("0:1"), ParseError);
  CHECK_THROWS_AS(GridSpec::parse("a:b:c"), ParseError);
  CHECK_THROWS_AS(GridSpec::parse(""), ParseError);
}

TEST_CASE("truncation slack closed form") {
  CHECK(convergence_slack(MeasureKind::Beta, kP2, 1.0, 256) ==
        doctest::Approx(kSlack256).epsilon(1e-12));
  CHECK(convergence_slack(MeasureKind::Beta, kP2, 0.0, 256) == doctest::Approx(0.0));
  // More truncation points, less shortfall.
  CHECK(convergence_slack(MeasureKind::Beta, kP2, 1.0, 1024) < kSlack256);
}

TEST_CASE("restricted beta estimate lands on closed form minus slack") {
  EstimatorConfig cfg;
  ModulusPoint pt = estimate_modulus(MeasureKind::Beta, kP2, 1.0, true, cfg);
  REQUIRE(pt.analytic.has_value());
  CHECK(*pt.analytic == doctest::Approx(kBetaAtOne).epsilon(1e-14));
  CHECK(pt.numeric == doctest::Approx(kBetaAtOne - kSlack256).epsilon(1e-6));
  REQUIRE(pt.slack.has_value());
  CHECK(*pt.slack == doctest::Approx(kSlack256).epsilon(1e-12));
  REQUIRE(pt.witness.has_value());
  CHECK(is_minimal(*pt.witness, MeasureKind::Beta, kP2));
  CHECK(validate_in_unit_ball(*pt.witness, kP2));
  CHECK(pt.restricted_minimal);
  CHECK_FALSE(pt.error.has_value());
}

TEST_CASE("unrestricted alpha estimate uses the sphere family") {
  ModulusPoint pt = estimate_modulus(MeasureKind::Alpha, kP2, 1.0, false);
  CHECK(pt.numeric == doctest::Approx(kAlphaAtOne).epsilon(1e-4));
  REQUIRE(pt.witness.has_value());
  CHECK(to_text(*pt.witness).rfind("sphere(", 0) == 0);
  REQUIRE(pt.slack.has_value());
  CHECK(*pt.slack == 0.0);  // antipodal truncations carry no shortfall
  CHECK_FALSE(pt.restricted_minimal);
}

TEST_CASE("estimate domain guards") {
  CHECK_THROWS_AS(estimate_modulus(MeasureKind::Chi, kP2, 1.0, true), DomainError);
  CHECK_THROWS_AS(estimate_modulus(MeasureKind::Alpha, kP2, 1.5, true), DomainError);
  CHECK_NOTHROW(estimate_modulus(MeasureKind::Alpha, kP2, 1.5, false));
  EstimatorConfig bad;
  bad.trunc_n = 4;
  CHECK_THROWS_AS(estimate_modulus(MeasureKind::Beta, kP2, 0.5, true, bad), DomainError);
}

TEST_CASE("curves tolerate per-point failures") {
  EstimatorConfig cfg;
  cfg.trunc_n = 64;
  ModulusCurve curve =
      modulus_curve(MeasureKind::Beta, kP2, GridSpec{0.0, 1.5, 0.5}, true, cfg);
  REQUIRE(curve.points.size() == 4);
  CHECK(curve.kind == MeasureKind::Beta);
  CHECK(curve.restricted_minimal);
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(curve.points[i].error.has_value());
  }
  // 1.5 exceeds the beta witness ceiling sqrt(2): recorded, not thrown.
  CHECK(curve.points[3].error.has_value());
  CHECK(std::isnan(curve.points[3].numeric));
  CHECK_FALSE(curve.points[3].witness.has_value());

  std::string csv = curve_to_csv(curve);
  CHECK(csv.rfind("epsilon,analytic,numeric,witness\n", 0) == 0);
  CHECK(csv.find("\"tail(") != std::string::npos);
  CHECK(csv.find("\"error: ") != std::string::npos);
  CHECK(csv.find("nan") != std::string::npos);

  nlohmann::json j = nlohmann::json::parse(curve_to_json(curve));
  CHECK(j["kind"] == "beta");
  CHECK(j["restricted_minimal"] == true);
  CHECK(j["p"] == 2.0);
  REQUIRE(j["points"].size() == 4);
  CHECK(j["points"][0]["epsilon"] == 0.0);
  CHECK(j["points"][3]["error"].is_string());
  CHECK(j["points"][3]["numeric"].is_null());

  std::string svg = curve_to_svg(curve);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("characteristic picks the largest near-zero epsilon") {
  ModulusCurve curve;
  curve.kind = MeasureKind::Chi;
  curve.restricted_minimal = true;
  for (double eps : {0.0, 0.1, 0.2}) {
    ModulusPoint pt;
    pt.epsilon = eps;
    pt.numeric = (eps == 0.0) ? 0.0 : (eps == 0.1 ? 5e-5 : 0.3);
    curve.points.push_back(pt);
  }
  CharacteristicEstimate ce = characteristic(curve, 1e-4);
  CHECK(ce.value == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(ce.kind == MeasureKind::Chi);
  CHECK(ce.restricted_minimal);

  CharacteristicEstimate strict = characteristic(curve, 1e-6);
  CHECK(strict.value == 0.0);
}

TEST_CASE("estimated rescaling identity at a spot value") {
  EstimatorConfig cfg;
  cfg.trunc_n = 128;
  double a = estimate_modulus(MeasureKind::Alpha, kP2, 0.8, true, cfg).numeric;
  double c =
      estimate_modulus(MeasureKind::Chi, kP2, 0.8 / kSqrt2, true, cfg).numeric;
  CHECK(a == doctest::Approx(c).epsilon(1e-5));
}

}  // TEST_SUITE

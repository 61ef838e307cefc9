#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mncx/verify.hpp"

using namespace mncx;

namespace {

VerifyConfig light_config(double p = 2.0) {
  VerifyConfig cfg;
  cfg.space.p = p;
  cfg.trials = 200;
  cfg.est.trunc_n = 64;
  cfg.estimator_step = 0.1;
  cfg.analytic_step = 0.05;
  return cfg;
}

}  // namespace

TEST_SUITE("verify_suite") {

TEST_CASE("registry") {
  std::vector<std::string> names = check_names();
  std::vector<std::string> expected = {
      "axioms",       "chain",      "strict-gap",        "rescaling",
      "nonminimalizable-alpha", "continuity", "minimality-lemmas", "oracle-convergence"};
  CHECK(names == expected);
}

TEST_CASE("full suite passes at p=2") {
  VerifyConfig cfg = light_config();
  VerificationReport rep = run_all(cfg);
  CHECK(rep.failed == 0);
  CHECK(rep.passed == static_cast<int>(check_names().size()));
  for (const CheckResult& r : rep.checks) {
    CAPTURE(r.name);
    CAPTURE(r.details);
    CHECK(r.pass);
    CHECK(r.margin >= 0.0);
    CHECK_FALSE(r.claim_ref.empty());
    CHECK(r.runtime_ms >= 0.0);
  }

  std::string text = report_to_text(rep);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(text.find("8/8 checks passed") != std::string::npos);
}

TEST_CASE("single checks run standalone") {
  VerifyConfig cfg = light_config();
  VerificationReport rep = run_suite(cfg, "axioms");
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "axioms");
  CHECK(rep.checks[0].pass);

  VerifyConfig p3 = light_config(3.0);
  VerificationReport chain = run_suite(p3, "chain");
  REQUIRE(chain.checks.size() == 1);
  CHECK(chain.checks[0].pass);

  CHECK_THROWS_AS(run_suite(cfg, "bogus"), DomainError);
}

TEST_CASE("json report structure and determinism") {
  VerifyConfig cfg = light_config();
  VerificationReport rep1 = run_all(cfg);
  VerificationReport rep2 = run_all(cfg);

  std::string j1 = report_to_json(rep1, false);
  std::string j2 = report_to_json(rep2, false);
  CHECK(j1 == j2);  // identical configs, byte-identical reports
  CHECK(j1.find("runtime_ms") == std::string::npos);

  nlohmann::json j = nlohmann::json::parse(j1);
  CHECK(j["config"]["p"] == 2.0);
  CHECK(j["config"]["trials"] == 200);
  CHECK(j["summary"]["total"] == 8);
  CHECK(j["summary"]["passed"] == 8);
  CHECK(j["summary"]["failed"] == 0);
  REQUIRE(j["checks"].size() == 8);
  CHECK(j["checks"][0]["name"] == "axioms");
  CHECK(j["checks"][0]["pass"] == true);

  std::string with_rt = report_to_json(rep1, true);
  CHECK(with_rt.find("runtime_ms") != std::string::npos);
}

}  // TEST_SUITE

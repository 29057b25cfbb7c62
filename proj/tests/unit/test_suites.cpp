#include "crystalforge/suites.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cf;

TEST_CASE("suite applicability") {
  CHECK(suiteApplies("weyl", "D4"));
  CHECK_FALSE(suiteApplies("verma", "D4"));
  CHECK(suiteApplies("trivialization", "SL3"));
  CHECK_FALSE(suiteApplies("trivialization", "GL3"));
  CHECK_FALSE(suiteApplies("invariants", "C2folded"));
  CHECK(suiteSupportsCorrupt("verma"));
  CHECK_FALSE(suiteSupportsCorrupt("weyl"));
  CHECK_THROWS_AS(runSuite("nosuch", "GL3", {}), NotSupported);
  CHECK_THROWS_AS(runSuite("verma", "GL9", {}), NotSupported);
  CHECK_THROWS_AS(runSuite("product", "D4", {}), NotSupported);
  SuiteOptions bad;
  bad.corrupt = true;
  CHECK_THROWS_AS(runSuite("weyl", "GL3", bad), NotSupported);
}

TEST_CASE("reports") {
  SuiteOptions opt;
  auto r = runSuite("verma", "SL2", opt);
  CHECK(r.pass());
  CHECK(r.checks.size() == 4);
  std::string a = reportJson("SL2", opt, {r}, false), b = reportJson("SL2", opt, {runSuite("verma", "SL2", opt)}, false);
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["schema"] == "crystalforge.verify/1");
  CHECK(j["status"] == "pass");
  CHECK(j["seed"] == kDefaultSeed);
  CHECK(j["suites"][0]["checks"][0]["mode"] == "exact");
  CHECK_FALSE(j["suites"][0].contains("seconds"));
  CHECK(nlohmann::json::parse(reportJson("SL2", opt, {r}, true))["suites"][0].contains("seconds"));

  opt.corrupt = true;
  CHECK_FALSE(runSuite("verma", "SL2", opt).pass());
  CHECK_FALSE(runSuite("duality", "GL2", opt).pass());
}

TEST_CASE("check groups on small groups") {
  SuiteOptions opt;
  for (const char* g : {"GL2", "SL2", "GL3", "SL3", "C2folded"})
    for (const auto& s : suiteNames()) {
      if (!suiteApplies(s, g)) continue;
      CAPTURE(g);
      CAPTURE(s);
      auto r = runSuite(s, g, opt);
      for (const auto& c : r.checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
      }
    }
}

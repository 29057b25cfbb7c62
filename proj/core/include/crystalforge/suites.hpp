#pragma once

#include <string>
#include <vector>

#include "crystalforge/verify.hpp"

namespace cf {

struct SuiteOptions {
  VerifyOptions verify;
  int box = 4;           // trop suite box radius
  bool corrupt = false;  // perturb the crystal under test (negative control)
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

const std::vector<std::string>& suiteNames();
const std::vector<std::string>& groupNames();
bool suiteApplies(const std::string& suite, const std::string& group);
bool suiteSupportsCorrupt(const std::string& suite);

// NotSupported when the suite does not apply to the group.
SuiteReport runSuite(const std::string& suite, const std::string& group, const SuiteOptions& opt);

// Individual check groups, shared with the acceptance binary.
std::vector<CheckResult> commutationChecks(const std::string& group);
std::vector<CheckResult> vermaChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> wActionChecks(const std::string& group, const SuiteOptions& opt);
// chainModes[j-1] overrides the mode of the chain relation for index j when present.
std::vector<CheckResult> trivializationChecks(const std::string& group, const SuiteOptions& opt,
                                              const std::vector<Mode>& chainModes = {});
std::vector<CheckResult> productChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> dualityChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> diagonalizationChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> uwChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> etaCharacterChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> leviInvarianceChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> fInvarianceChecks(const std::string& group, const SuiteOptions& opt);
std::vector<CheckResult> weylChecks(const std::string& group);
std::vector<CheckResult> tropChecks(const std::string& group, const SuiteOptions& opt);

std::string reportJson(const std::string& group, const SuiteOptions& opt, const std::vector<SuiteReport>& reports,
                       bool timing);

}  // namespace cf

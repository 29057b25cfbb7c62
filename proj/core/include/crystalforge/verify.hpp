#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crystalforge/exactalg.hpp"

namespace cf {

using Tuple = std::vector<RatFunc>;

enum class Mode { Exact, Sampled };
std::string modeName(Mode m);
Mode parseMode(const std::string& s);  // ParseError

inline constexpr uint64_t kDefaultSeed = 20231210;

struct VerifyOptions {
  Mode mode = Mode::Exact;
  bool fallback = true;  // exact -> sampled when the term budget is exceeded
  uint64_t seed = kDefaultSeed;
  size_t budget = kDefaultTermBudget;
  int points = 20;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  Mode mode = Mode::Exact;
  int points = 0;   // sampled points actually compared
  int skipped = 0;  // sampled points outside the domain
  std::string detail;
};

bool equalTuples(const Tuple& a, const Tuple& b);

// Seeded positive rationals p/q, p, q in 1..97.
class RationalSampler {
 public:
  explicit RationalSampler(uint64_t seed);
  Rational next();
  Tuple point(int arity);

 private:
  std::mt19937_64 rng_;
};

using TupleFn = std::function<Tuple(const Tuple&)>;

// Compares lhs and rhs either on the generic point (variables 0..arity-1) or on
// seeded random rational points. Points where either side is undefined are skipped.
CheckResult checkIdentity(const std::string& name, int arity, const TupleFn& lhs, const TupleFn& rhs,
                          const VerifyOptions& opt);

// Predicate variant: holds(point) must be true on the generic point or every sample.
CheckResult checkPredicate(const std::string& name, int arity,
                           const std::function<bool(const Tuple&)>& holds, const VerifyOptions& opt);

Tuple variables(int arity, int first = 0, int count = -1);

}  // namespace cf

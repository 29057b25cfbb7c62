#include "crystalforge/verify.hpp"

namespace cf {

std::string modeName(Mode m) { return m == Mode::Exact ? "exact" : "sampled"; }

Mode parseMode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "sampled") return Mode::Sampled;
  throw ParseError("unknown mode '" + s + "'");
}

bool equalTuples(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!equals(a[k], b[k])) return false;
  return true;
}

RationalSampler::RationalSampler(uint64_t seed) : rng_(seed) {}

Rational RationalSampler::next() {
  std::uniform_int_distribution<long> d(1, 97);
  long p = d(rng_), q = d(rng_);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Tuple RationalSampler::point(int arity) {
  Tuple t;
  for (int k = 0; k < arity; ++k) t.emplace_back(next());
  return t;
}

Tuple variables(int arity, int first, int count) {
  if (count < 0) count = arity - first;
  Tuple t;
  for (int k = first; k < first + count; ++k) t.push_back(RatFunc::var(k, arity));
  return t;
}

namespace {

bool outsideDomain(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const DivisionByZeroFunction&) {
    return true;
  } catch (const PoleAtPoint&) {
    return true;
  } catch (const NotInBigCell&) {
    return true;
  } catch (const NotInCell&) {
    return true;
  } catch (const NonInvertible&) {
    return true;
  } catch (...) {
    return false;
  }
}

CheckResult runSampled(const std::string& name, int arity, const std::function<bool(const Tuple&)>& holds,
                       const VerifyOptions& opt, const std::string& note) {
  CheckResult r{name, true, Mode::Sampled, 0, 0, note};
  RationalSampler rs(opt.seed);
  int attempts = 0;
  while (r.points < opt.points && attempts < 5 * opt.points) {
    ++attempts;
    Tuple p = rs.point(arity);
    bool ok;
    try {
      ok = holds(p);
    } catch (...) {
      if (!outsideDomain(std::current_exception())) throw;
      ++r.skipped;
      continue;
    }
    ++r.points;
    if (!ok) {
      r.pass = false;
      std::string coords;
      for (const auto& v : p) coords += (coords.empty() ? "" : ",") + toString(v.constantValue());
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("mismatch at (") + coords + ")";
      break;
    }
  }
  if (r.points < opt.points && r.pass) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("too many points outside the domain");
  }
  return r;
}

}  // namespace

CheckResult checkPredicate(const std::string& name, int arity, const std::function<bool(const Tuple&)>& holds,
                           const VerifyOptions& opt) {
  if (opt.mode == Mode::Sampled) return runSampled(name, arity, holds, opt, "");
  try {
    TermBudgetScope scope(opt.budget);
    bool ok = holds(variables(arity));
    return CheckResult{name, ok, Mode::Exact, 0, 0, ok ? "" : "symbolic mismatch"};
  } catch (const TermBudgetExceeded& e) {
    if (!opt.fallback) return CheckResult{name, false, Mode::Exact, 0, 0, e.what()};
    return runSampled(name, arity, holds, opt, "term budget exceeded; sampled");
  }
}

CheckResult checkIdentity(const std::string& name, int arity, const TupleFn& lhs, const TupleFn& rhs,
                          const VerifyOptions& opt) {
  return checkPredicate(name, arity, [&](const Tuple& p) { return equalTuples(lhs(p), rhs(p)); }, opt);
}

}  // namespace cf

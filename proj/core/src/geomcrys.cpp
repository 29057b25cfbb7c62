#include "crystalforge/geomcrys.hpp"

#include <algorithm>

#include "json.hpp"

namespace cf {

bool GeomCrystal::supports(int i) const { return std::find(support.begin(), support.end(), i) != support.end(); }

RatFunc atPoint(const RatFunc& f, const Tuple& x) {
  if (f.isConstant()) return f;
  return substitute(f, x);
}

Tuple applyE(const GeomCrystal& X, int i, const RatFunc& c, const Tuple& x) {
  auto it = X.eMap.find(i);
  if (it == X.eMap.end()) throw NotSupported("e_" + std::to_string(i) + " is not defined on this crystal");
  if (c.isOne()) return x;
  Tuple img = x;
  img.push_back(c);
  Tuple out;
  out.reserve(it->second.size());
  for (const auto& comp : it->second) out.push_back(atPoint(comp, img));
  return out;
}

Torus gammaAt(const GeomCrystal& X, const Tuple& x) {
  Torus t;
  for (const auto& g : X.gamma) t.push_back(atPoint(g, x));
  return t;
}

RatFunc phiAt(const GeomCrystal& X, int i, const Tuple& x) {
  auto it = X.phi.find(i);
  if (it == X.phi.end()) throw NotSupported("phi_" + std::to_string(i) + " is not available");
  return atPoint(it->second, x);
}

namespace {

Torus torusMul(const Torus& a, const Torus& b) {
  Torus r;
  for (size_t k = 0; k < a.size(); ++k) r.push_back(a[k] * b[k]);
  return r;
}

using Step = std::pair<int, RatFunc>;

// Steps are written left to right as in e_{a}^{.} e_{b}^{.} ...; the rightmost acts first.
Tuple applySteps(const GeomCrystal& X, const std::vector<Step>& steps, const Tuple& x) {
  Tuple cur = x;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) cur = applyE(X, it->first, it->second, cur);
  return cur;
}

}  // namespace

PreCrystalReport checkPreCrystal(const GeomCrystal& X) {
  PreCrystalReport rep;
  int m = X.m();
  int ar = m + 2;
  Tuple x = variables(ar, 0, m);
  RatFunc c = RatFunc::var(m, ar), c2 = RatFunc::var(m + 1, ar);
  Torus g = gammaAt(X, x);
  for (int i : X.support) {
    Tuple ex = applyE(X, i, c, x);
    // e_i^1 is short-circuited in applyE, so substitute explicitly.
    Tuple one;
    Tuple img = x;
    img.push_back(RatFunc(1L));
    for (const auto& comp : X.eMap.at(i)) one.push_back(atPoint(comp, img));
    if (!equalTuples(one, x)) rep.unital = false;
    if (!equalTuples(applyE(X, i, c, applyE(X, i, c2, x)), applyE(X, i, c * c2, x))) rep.actionLaw = false;
    Torus lhs = gammaAt(X, ex);
    Torus rhs = torusMul(X.ctx->cocharTorus(X.ctx->datum()->coroot(i), c), g);
    if (!equalTuples(lhs, rhs)) rep.gammaCompatible = false;
    if (X.phi.count(i) && !equals(phiAt(X, i, ex), phiAt(X, i, x) / c)) rep.phiCompatible = false;
  }
  return rep;
}

std::vector<IVec> associatedRoots(const DatumPtr& d, const Word& word) {
  if (!isReduced(d, word)) throw NotReduced("word " + wordToString(word) + " is not reduced");
  std::vector<IVec> out;
  for (size_t k = 0; k < word.size(); ++k) {
    IVec a = d->root(word[k]);
    for (size_t l = k + 1; l < word.size(); ++l) a = d->reflectChar(word[l], a);
    out.push_back(a);
  }
  return out;
}

Tuple composeEI(const GeomCrystal& X, const Word& word, const Torus& t, const Tuple& x) {
  auto roots = associatedRoots(X.ctx->datum(), word);
  std::vector<Step> steps;
  for (size_t k = 0; k < word.size(); ++k) steps.emplace_back(word[k], X.ctx->character(roots[k], t));
  return applySteps(X, steps, x);
}

std::string patternName(VermaPattern p) {
  switch (p) {
    case VermaPattern::A1A1:
      return "A1A1";
    case VermaPattern::A2:
      return "A2";
    case VermaPattern::B2:
      return "B2";
  }
  return "?";
}

VermaPattern parsePattern(const std::string& s) {
  if (s == "A1A1") return VermaPattern::A1A1;
  if (s == "A2") return VermaPattern::A2;
  if (s == "B2") return VermaPattern::B2;
  throw ParseError("unknown Verma pattern '" + s + "'");
}

std::pair<Tuple, Tuple> vermaSides(const GeomCrystal& X, VermaPattern p, int i, int j, const RatFunc& c1,
                                   const RatFunc& c2, const Tuple& x) {
  const auto& d = X.ctx->datum();
  long aij = d->cartan(i, j), aji = d->cartan(j, i);
  switch (p) {
    case VermaPattern::A1A1:
      if (aij != 0 || aji != 0) throw PatternMismatch("A1A1 needs orthogonal indices");
      return {applySteps(X, {{i, c1}, {j, c2}}, x), applySteps(X, {{j, c2}, {i, c1}}, x)};
    case VermaPattern::A2:
      if (aij != -1 || aji != -1) throw PatternMismatch("A2 needs a simply-laced adjacent pair");
      return {applySteps(X, {{i, c1}, {j, c1 * c2}, {i, c2}}, x),
              applySteps(X, {{j, c2}, {i, c1 * c2}, {j, c1}}, x)};
    case VermaPattern::B2: {
      if (aij != -2 || aji != -1) throw PatternMismatch("B2 needs <a_i^v,a_j> = -2, <a_j^v,a_i> = -1");
      RatFunc c112 = c1 * c1 * c2, c12 = c1 * c2;
      return {applySteps(X, {{i, c1}, {j, c112}, {i, c12}, {j, c2}}, x),
              applySteps(X, {{j, c2}, {i, c12}, {j, c112}, {i, c1}}, x)};
    }
  }
  throw PatternMismatch();
}

CheckResult verifyVerma(const GeomCrystal& X, VermaPattern p, int i, int j, const VerifyOptions& opt) {
  int m = X.m();
  // Validate the pattern before any evaluation.
  vermaSides(X, p, i, j, RatFunc(1L), RatFunc(1L), variables(m));
  std::string name = patternName(p) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  return checkPredicate(
      name, m + 2,
      [&](const Tuple& pt) {
        Tuple x(pt.begin(), pt.begin() + m);
        auto [l, r] = vermaSides(X, p, i, j, pt[m], pt[m + 1], x);
        return equalTuples(l, r);
      },
      opt);
}

Tuple simpleReflection(const GeomCrystal& X, int i, const Tuple& x) {
  RatFunc a = X.ctx->alpha(i, gammaAt(X, x));
  return applyE(X, i, a.inv(), x);
}

Tuple weylAct(const GeomCrystal& X, const Word& word, const Tuple& x) {
  for (int i : word)
    if (!X.supports(i)) throw NotSupported("s_" + std::to_string(i) + " outside the support");
  Tuple cur = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = simpleReflection(X, *it, cur);
  return cur;
}

Tuple weylAct(const GeomCrystal& X, const WeylElt& w, const Tuple& x) { return weylAct(X, w.word(), x); }

RatFunc omega(const Torus& t, int k) {
  RatFunc r(1L);
  for (int l = 0; l < k; ++l) r = r * t[l];
  return r;
}

namespace {

int slRank(const GeomCrystal& X) {
  const auto& d = X.ctx->datum();
  if (d->kind != GroupKind::SL) throw NotSupported("trivialization is implemented for SL_{r+1}");
  return d->rank();
}

}  // namespace

Tuple trivialize(const GeomCrystal& X, const Tuple& x, bool flipped) {
  int r = slRank(X);
  Torus t = gammaAt(X, x);
  auto flip = [&](int l) { return flipped ? r + 1 - l : l; };
  auto w = [&](int k) { return omega(t, flip(k)); };
  Tuple cur = x;
  for (int k = 1; k <= r; ++k) {
    RatFunc ex = k < r ? w(k + 1) / w(k) : w(r).inv();
    for (int l = k; l >= 1; --l) cur = applyE(X, flip(l), ex, cur);
  }
  return cur;
}

Tuple naiveTrivialize(const GeomCrystal& X, const Tuple& x) {
  int r = slRank(X);
  Torus t = gammaAt(X, x);
  Tuple cur = x;
  for (int l = r; l >= 1; --l) cur = applyE(X, l, omega(t, l).inv(), cur);
  return cur;
}

void checkGammaDominant(const GeomCrystal& X) {
  int r = slRank(X);
  std::vector<std::vector<RatFunc>> jac;
  for (int k = 1; k <= r; ++k) {
    RatFunc w = omega(X.gamma, k);
    if (w.isZero()) throw DegenerateGamma("omega_" + std::to_string(k) + "(gamma) vanishes");
    std::vector<RatFunc> row;
    for (int v = 0; v < X.m(); ++v) row.push_back(derivative(w, v) / w);
    jac.push_back(row);
  }
  if (symbolicRank(jac) < r) throw DegenerateGamma("gamma is not dominant onto the torus");
}

std::pair<Tuple, Tuple> chainSides(const GeomCrystal& X, int j, const RatFunc& c, const RatFunc& c2,
                                   const Tuple& x) {
  std::vector<Step> lhs, rhs;
  for (int l = 1; l <= j; ++l) lhs.emplace_back(l, c);
  for (int l = 1; l < j; ++l) lhs.emplace_back(l, c2);
  lhs.emplace_back(j, c2 / c);
  for (int l = 1; l <= j; ++l) rhs.emplace_back(l, c2);
  for (int l = 1; l < j; ++l) rhs.emplace_back(l, c);
  return {applySteps(X, lhs, x), applySteps(X, rhs, x)};
}

GeomCrystal dualize(const GeomCrystal& X) {
  GeomCrystal D = X;
  int m = X.m();
  Tuple img = variables(m + 1, 0, m);
  img.push_back(RatFunc::var(m, m + 1).inv());
  for (auto& [i, comps] : D.eMap)
    for (auto& f : comps) f = atPoint(f, img);
  for (auto& g : D.gamma) g = g.inv();
  for (auto& [i, f] : D.phi) f = -f * X.ctx->alpha(i, X.gamma);
  if (D.matrixForm) D.matrixForm = D.matrixForm->inverse();
  return D;
}

bool sameCrystal(const GeomCrystal& a, const GeomCrystal& b) {
  if (a.support != b.support || a.m() != b.m()) return false;
  if (!equalTuples(a.gamma, b.gamma)) return false;
  for (int i : a.support) {
    if (!a.eMap.count(i) || !b.eMap.count(i)) return false;
    if (!equalTuples(a.eMap.at(i), b.eMap.at(i))) return false;
    if (a.phi.count(i) && b.phi.count(i) && !equals(a.phi.at(i), b.phi.at(i))) return false;
  }
  return true;
}

Tuple lambdaShift(const GeomCrystal& X, int i, const IVec& lambda, const Tuple& x, bool inverse) {
  RatFunc c = X.ctx->character(lambda, gammaAt(X, x));
  return applyE(X, i, inverse ? c.inv() : c, x);
}

std::string toJson(const GeomCrystal& X) {
  using nlohmann::ordered_json;
  VarNames names = X.chartVars;
  names.push_back("c");
  ordered_json j;
  j["group"] = X.ctx->name();
  j["chartVars"] = X.chartVars;
  j["support"] = X.support;
  ordered_json e = ordered_json::object();
  for (const auto& [i, comps] : X.eMap) {
    std::vector<std::string> s;
    for (const auto& f : comps) s.push_back(toString(f, names));
    e[std::to_string(i)] = s;
  }
  j["e"] = e;
  std::vector<std::string> g;
  for (const auto& f : X.gamma) g.push_back(toString(f, names));
  j["gamma"] = g;
  ordered_json ph = ordered_json::object();
  for (const auto& [i, f] : X.phi) ph[std::to_string(i)] = toString(f, names);
  j["phi"] = ph;
  return j.dump(2);
}

}  // namespace cf

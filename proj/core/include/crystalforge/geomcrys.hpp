#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crystalforge/matgroup.hpp"
#include "crystalforge/verify.hpp"

namespace cf {

// Geometric pre-crystal on an affine torus chart with coordinates z_0..z_{m-1}.
// Each eMap[i] is an m-tuple in the variables (z_0..z_{m-1}, c) with c at index m.
struct GeomCrystal {
  CtxPtr ctx;
  VarNames chartVars;
  std::vector<int> support;
  std::map<int, Tuple> eMap;
  Torus gamma;                  // one entry per matrix row, in the chart variables
  std::map<int, RatFunc> phi;   // optional
  std::optional<MatRF> matrixForm;

  int m() const { return int(chartVars.size()); }
  bool supports(int i) const;
};

// e_i^c(x) for a chart point x (any common arity) and a parameter c.
Tuple applyE(const GeomCrystal& X, int i, const RatFunc& c, const Tuple& x);
Torus gammaAt(const GeomCrystal& X, const Tuple& x);
RatFunc phiAt(const GeomCrystal& X, int i, const Tuple& x);
// Substitute a chart point into any chart function.
RatFunc atPoint(const RatFunc& f, const Tuple& x);

struct PreCrystalReport {
  bool unital = true;
  bool actionLaw = true;
  bool gammaCompatible = true;
  bool phiCompatible = true;
  bool ok() const { return unital && actionLaw && gammaCompatible && phiCompatible; }
};
PreCrystalReport checkPreCrystal(const GeomCrystal& X);

// Positive roots attached to a reduced word: alpha^(k) = s_{i_l}...s_{i_{k+1}}(alpha_{i_k}).
std::vector<IVec> associatedRoots(const DatumPtr& d, const Word& word);
// e_i^t(x) = e_{i_1}^{alpha^(1)(t)} o ... o e_{i_l}^{alpha^(l)(t)} (x).
Tuple composeEI(const GeomCrystal& X, const Word& word, const Torus& t, const Tuple& x);

enum class VermaPattern { A1A1, A2, B2 };
std::string patternName(VermaPattern p);
VermaPattern parsePattern(const std::string& s);
// Both sides of the Verma relation at chart point x with parameters c1, c2.
std::pair<Tuple, Tuple> vermaSides(const GeomCrystal& X, VermaPattern p, int i, int j, const RatFunc& c1,
                                   const RatFunc& c2, const Tuple& x);
// Chart variables followed by c1, c2; falls back to sampling above the term budget.
CheckResult verifyVerma(const GeomCrystal& X, VermaPattern p, int i, int j, const VerifyOptions& opt);

// s_i(x) = e_i^{1/alpha_i(gamma(x))}(x); words are applied right to left.
Tuple simpleReflection(const GeomCrystal& X, int i, const Tuple& x);
Tuple weylAct(const GeomCrystal& X, const Word& word, const Tuple& x);
Tuple weylAct(const GeomCrystal& X, const WeylElt& w, const Tuple& x);

// omega_k(gamma(x)): product of the first k torus coordinates.
RatFunc omega(const Torus& t, int k);
// Trivializations of an SL_{r+1} crystal; flipped = the diagram-flipped variant.
Tuple trivialize(const GeomCrystal& X, const Tuple& x, bool flipped = false);
// x -> e_1^{1/omega_1} ... e_r^{1/omega_r}(x); gamma-trivial but not W-invariant.
Tuple naiveTrivialize(const GeomCrystal& X, const Tuple& x);
// DegenerateGamma unless the omega_k(gamma) are multiplicatively independent.
void checkGammaDominant(const GeomCrystal& X);

std::pair<Tuple, Tuple> chainSides(const GeomCrystal& X, int j, const RatFunc& c, const RatFunc& c2,
                                   const Tuple& x);

// gamma -> gamma^{-1}, e_i^c -> e_i^{1/c}, phi_i -> -phi_i alpha_i(gamma).
GeomCrystal dualize(const GeomCrystal& X);
bool sameCrystal(const GeomCrystal& a, const GeomCrystal& b);

// x -> e_i^{lambda(gamma(x))}(x).
Tuple lambdaShift(const GeomCrystal& X, int i, const IVec& lambda, const Tuple& x, bool inverse = false);

std::string toJson(const GeomCrystal& X);

}  // namespace cf

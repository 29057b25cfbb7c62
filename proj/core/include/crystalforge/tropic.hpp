#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "crystalforge/geomcrys.hpp"
#include "crystalforge/weyl.hpp"

namespace cf {

// Subtraction-free expression DAG. Nodes are shared, so common subexpressions are
// visited once by tropicalize and degOracle.
class PosExpr {
 public:
  enum class Kind { Var, Const, Add, Mul, Div };
  struct Node {
    Kind kind;
    int index = 0;
    Rational value;
    std::shared_ptr<const Node> a, b;
  };

  static PosExpr var(int i);
  static PosExpr constant(const Rational& q);  // NotCertifiedPositive unless q > 0
  // Rebuilt from the stored numerator and denominator; NotCertifiedPositive if either
  // has a negative coefficient or the function is zero.
  static PosExpr fromRatFunc(const RatFunc& f);

  friend PosExpr operator+(const PosExpr& x, const PosExpr& y);
  friend PosExpr operator*(const PosExpr& x, const PosExpr& y);
  friend PosExpr operator/(const PosExpr& x, const PosExpr& y);

  Kind kind() const { return n_->kind; }
  const Node* node() const { return n_.get(); }
  int arity() const;  // highest variable index plus one

  RatFunc toRatFunc(int arity) const;
  // Substitute expressions for the variables.
  PosExpr compose(const std::vector<PosExpr>& images) const;

 private:
  explicit PosExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Random subtraction-free DAG of the given depth over `arity` variables.
PosExpr randomPosExpr(int arity, int depth, std::mt19937_64& rng);

// Min-plus piecewise-linear expression with integer linear leaves.
class TropExpr {
 public:
  enum class Kind { Lin, Min, Plus, Minus };
  struct Node {
    Kind kind;
    IVec lin;
    std::vector<TropExpr> kids;
  };

  static TropExpr lin(IVec coeffs);
  static TropExpr unit(int i, int arity);
  static TropExpr zero(int arity) { return lin(IVec(arity, 0)); }
  // Constructors fold linear children and flatten nested min / plus.
  static TropExpr min(std::vector<TropExpr> kids);
  static TropExpr plus(std::vector<TropExpr> kids);
  static TropExpr minus(const TropExpr& a, const TropExpr& b);
  static TropExpr scaled(const TropExpr& t, long k);

  Kind kind() const { return n_->kind; }
  const IVec& coeffs() const { return n_->lin; }
  const std::vector<TropExpr>& kids() const { return n_->kids; }
  int arity() const;

  long evaluate(const IVec& pt) const;
  TropExpr substitute(const std::vector<TropExpr>& images) const;
  std::string str(const VarNames& names) const;

 private:
  explicit TropExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct PLMap {
  VarNames vars;
  std::vector<TropExpr> components;
  int inDim() const { return int(vars.size()); }
  IVec evaluate(const IVec& pt) const;
};

std::string toJson(const PLMap& f);
PLMap plMapFromJson(const std::string& text);  // ParseError

TropExpr tropicalize(const PosExpr& e, int arity);
// ParseError on malformed input, NotCertifiedPositive when a subtraction is needed.
TropExpr tropicalize(const RatFunc& f);

// Lowest c-degree of e(a_1 c^{l_1}, ..., a_m c^{l_m}) with seeded positive a_k.
long degOracle(const PosExpr& e, const IVec& lambda, uint64_t seed = kDefaultSeed);
// Same oracle for an arbitrary rational function; ZeroFunction if the loop kills it.
long degOracle(const RatFunc& f, const IVec& lambda, uint64_t seed = kDefaultSeed);

struct FunctorialityReport {
  int samples = 0;
  int mismatches = 0;
  std::vector<std::string> examples;  // first few mismatches
  bool pass() const { return mismatches == 0; }
};
// deg(g o f) against deg(g) o deg(f), each side computed both by tropicalization and
// by the loop oracle; every disagreement counts.
FunctorialityReport checkFunctoriality(const std::vector<PosExpr>& f, const std::vector<PosExpr>& g, int arity,
                                       const std::vector<IVec>& samples, uint64_t seed = kDefaultSeed);
// Oracle-only variant for rational maps that need not be positive.
FunctorialityReport checkFunctoriality(const Tuple& f, const Tuple& g, const std::vector<IVec>& samples,
                                       uint64_t seed = kDefaultSeed);

// Combinatorial pre-crystal on Z^m. e[i] components live on (z, n) with n last;
// phi[i] is the tropicalized geometric phi_i, i.e. minus the Kashiwara function.
struct CombCrystal {
  DatumPtr datum;
  VarNames vars;
  std::vector<int> support;
  std::vector<TropExpr> gamma;
  std::map<int, std::vector<TropExpr>> e;
  std::map<int, TropExpr> phi;

  int m() const { return int(vars.size()); }
  IVec applyE(int i, long n, const IVec& z) const;
  IVec gammaAt(const IVec& z) const;
  // s_i(b) = e_i^{-<gamma(b), alpha_i>}(b)
  IVec reflect(int i, const IVec& z) const;
  PLMap eMap(int i) const;
  PLMap gammaMap() const;
};

// zeta for one coordinate, zeta1..zetam otherwise.
VarNames tropNames(int m);

CombCrystal tropCrystal(const GeomCrystal& X);

struct BoxReport {
  long points = 0;
  long checks = 0;
  long violations = 0;
  std::vector<std::string> examples;
  bool pass() const { return violations == 0; }
};
BoxReport verifyWCrystalBox(const CombCrystal& C, int B);

CombCrystal elementaryComb(const DatumPtr& d, int i);
CombCrystal latticeComb(const DatumPtr& d);
// Tropicalization of the geometric tensor rule, derived by tropicalize().
CombCrystal productRule(const CombCrystal& X, const CombCrystal& Y);
CombCrystal dualComb(const CombCrystal& C);

// Pointwise agreement of gamma and every e_i^n, |n| <= B, on [-B,B]^m.
BoxReport compareOnBox(const CombCrystal& a, const CombCrystal& b, int B);

std::string crystalGraphDOT(const CombCrystal& C, int B);
std::string toJson(const CombCrystal& C);

// All integer points of [-B,B]^m in lexicographic order.
std::vector<IVec> boxPoints(int m, int B);

}  // namespace cf

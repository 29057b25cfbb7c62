#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "crystalforge/exactalg.hpp"
#include "crystalforge/weyl.hpp"

namespace cf {

// Dense n x n matrix of rational functions, row-major.
class MatRF {
 public:
  MatRF() = default;
  explicit MatRF(int n);  // zero matrix
  static MatRF identity(int n);
  static MatRF diag(const std::vector<RatFunc>& d);
  static MatRF fromRows(const std::vector<std::vector<RatFunc>>& rows);

  int n() const { return n_; }
  RatFunc& operator()(int r, int c) { return e_[size_t(r) * n_ + c]; }
  const RatFunc& operator()(int r, int c) const { return e_[size_t(r) * n_ + c]; }

  MatRF operator*(const MatRF& o) const;
  MatRF inverse() const;  // NonInvertible
  RatFunc det() const;
  std::vector<RatFunc> diagonal() const;
  MatRF map(const std::function<RatFunc(const RatFunc&)>& f) const;

  bool isUnitUpper() const;
  bool isUnitLower() const;
  bool isLower() const;
  bool isDiagonal() const;
  bool isIdentity() const;

  std::vector<std::vector<std::string>> toStrings(const VarNames& names) const;
  std::string str(const VarNames& names) const;

 private:
  int n_ = 0;
  std::vector<RatFunc> e_;
};

bool equals(const MatRF& a, const MatRF& b);
MatRF substitute(const MatRF& g, const std::vector<RatFunc>& images);
std::vector<std::vector<Rational>> evalAt(const MatRF& g, const std::vector<Rational>& point);
// rows/cols are 1-based index sets.
RatFunc minor(const MatRF& g, const std::vector<int>& rows, const std::vector<int>& cols);
int symbolicRank(const std::vector<std::vector<RatFunc>>& m);

struct GaussTriple {
  MatRF uMinus;  // unit lower triangular
  MatRF t;       // diagonal
  MatRF uPlus;   // unit upper triangular
};
// g = uMinus * t * uPlus; NotInBigCell if a leading principal minor vanishes.
GaussTriple gauss(const MatRF& g);
MatRF piPlus(const MatRF& g);   // uPlus
MatRF piMinus(const MatRF& g);  // uMinus * t
MatRF prT(const MatRF& g);      // t

// Diagonal torus element, one entry per matrix row.
using Torus = std::vector<RatFunc>;

class GroupCtx;
using CtxPtr = std::shared_ptr<const GroupCtx>;

class GroupCtx {
 public:
  static CtxPtr GL(int n);
  static CtxPtr SL(int n);
  static CtxPtr foldedC2();
  static CtxPtr byName(const std::string& name);  // NotSupported for D4

  const DatumPtr& datum() const { return d_; }
  const std::string& name() const { return d_->name; }
  int n() const { return d_->n; }
  const std::vector<int>& labels() const { return d_->labels; }
  // 0-based p with E_{p,p+1} in the pinning of label i.
  const std::vector<int>& positions(int i) const;

  MatRF x(int i, const RatFunc& a) const;
  MatRF y(int i, const RatFunc& a) const;
  MatRF cochar(const IVec& lambda, const RatFunc& c) const;
  MatRF alphaCo(int i, const RatFunc& c) const { return cochar(d_->coroot(i), c); }
  MatRF sbar(int i) const;  // x_i(-1) y_i(1) x_i(-1)
  MatRF wbar(const WeylElt& w) const;
  MatRF wbarWord(const Word& w) const;
  MatRF rhoMinus1() const;  // diag(1,-1,1,...)
  MatRF iota(const MatRF& g) const;
  // Permutation p with wbar e_k = +-e_{p[k]} (0-based).
  std::vector<int> permutationOf(const WeylElt& w) const;

  // chi_i of a unit upper matrix, chi_i^- of a unit lower matrix.
  RatFunc chi(int i, const MatRF& u) const;
  RatFunc chiMinus(int i, const MatRF& um) const;
  RatFunc chiBar(bool plus, int i, const MatRF& g) const;

  Torus torusOf(const MatRF& g) const { return g.diagonal(); }
  MatRF torusMatrix(const Torus& t) const { return MatRF::diag(t); }
  Torus cocharTorus(const IVec& lambda, const RatFunc& c) const;
  RatFunc character(const IVec& lambda, const Torus& t) const;
  RatFunc alpha(int i, const Torus& t) const { return character(d_->root(i), t); }

  // pi_i(c) = y_i(1/c) alpha_i^v(c)
  MatRF piOne(int i, const RatFunc& c) const;
  MatRF piSeq(const Word& w, const std::vector<RatFunc>& c) const;
  MatRF piUpper(const Word& w, const std::vector<RatFunc>& c) const;
  MatRF thetaK(const Word& w, const std::vector<RatFunc>& c) const;
  MatRF thetaL(const Word& w, const std::vector<RatFunc>& c) const;

  // fwd: pi^-(u wbar); inv: pi(wbar b^{-1})^{-1}.
  MatRF etaW(bool fwd, const WeylElt& w, const MatRF& arg) const;
  // v(u t wbar0 u') = u u'; NotInCell off the big cell.
  MatRF vMap(const MatRF& g) const;

  // Generic double-coset membership by rank conditions over the function field.
  bool inBminusDoubleCoset(const MatRF& g, const WeylElt& w) const;  // B^- wbar B^-
  bool inBDoubleCoset(const MatRF& g, const WeylElt& w) const;       // B wbar B

  // Basis (rows of coefficients over labels) of the characters chi = sum c_i chi_i with
  // chi(wbar^{-1} u wbar) = chi(u) for all u in U cap wbar U wbar^{-1}; root subgroups
  // are enumerated as matrix units, so type A contexts only.
  std::vector<std::vector<Rational>> invariantCharacters(const WeylElt& w) const;

  // x_i(a) y_i(a') = y_i(a'/(1+aa')) alpha_i^v(1+aa') x_i(a/(1+aa')) with fresh symbols.
  bool checkCommutation(int i) const;

 private:
  DatumPtr d_;
  std::vector<std::vector<int>> pos_;
};

}  // namespace cf

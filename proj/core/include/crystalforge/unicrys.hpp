#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crystalforge/geomcrys.hpp"
#include "crystalforge/matgroup.hpp"

namespace cf {

struct UNode;
using UNodePtr = std::shared_ptr<const UNode>;

// Factorization tree. Every node carries its B^- map in local chart variables 0..m-1.
struct UNode {
  enum class Kind { OneDim, Torus, Product, Dual };
  Kind kind;
  int index = 0;        // OneDim: the simple root label
  UNodePtr a, b;        // Product: a x b; Dual: a
  int m = 0;            // chart dimension
  MatRF f;              // local chart -> B^-
  cf::Torus gamma;      // pr_T of f
  std::map<int, RatFunc> phi;  // chi-bar^-_i of f, nonzero entries only
};

class UniCrystal {
 public:
  UniCrystal() = default;
  UniCrystal(CtxPtr ctx, UNodePtr node, VarNames vars) : ctx_(std::move(ctx)), node_(std::move(node)), vars_(std::move(vars)) {}

  const CtxPtr& ctx() const { return ctx_; }
  const UNodePtr& node() const { return node_; }
  const VarNames& chartVars() const { return vars_; }
  int m() const { return node_->m; }
  const MatRF& f() const { return levi_ ? *leviF_ : node_->f; }
  // Empty unless restricted to a Levi subgroup.
  const std::optional<std::vector<int>>& levi() const { return levi_; }
  std::vector<int> support() const;

  UniCrystal withLevi(std::vector<int> J, MatRF f) const;

 private:
  CtxPtr ctx_;
  UNodePtr node_;
  VarNames vars_;
  std::optional<std::vector<int>> levi_;
  std::optional<MatRF> leviF_;
};

// chi-bar^-_i for a matrix already in B^-: b(p+1,p) / b(p,p).
RatFunc chiBarLower(const GroupCtx& ctx, int i, const MatRF& b);

UniCrystal oneDim(const CtxPtr& ctx, int i, const std::string& var = "z1");
// Constant torus factor: chart = the torus coordinates `params` (local variables).
UniCrystal torusFactor(const CtxPtr& ctx, const cf::Torus& t, const VarNames& vars);
UniCrystal pointCrystal(const CtxPtr& ctx);
UniCrystal standardCell(const CtxPtr& ctx, const Word& word);
UniCrystal product(const UniCrystal& X, const UniCrystal& Y);
UniCrystal dual(const UniCrystal& X);
UniCrystal restrictLevi(const UniCrystal& X, const std::vector<int>& J);
// p^-_L: keep the block-diagonal part of a lower triangular matrix.
MatRF leviProjection(const GroupCtx& ctx, const std::vector<int>& J, const MatRF& b);

MatRF fAt(const UniCrystal& X, const Tuple& x);

// x_i(a) acting on chart point x; second = the parameter a' with pi(x_i(a) f(x)) = x_i(a').
std::pair<Tuple, RatFunc> actU(const UniCrystal& X, int i, const RatFunc& a, const Tuple& x);
// General u in U (unit upper matrix) acting on x; second = pi(u f(x)).
std::pair<Tuple, MatRF> actUMatrix(const UniCrystal& X, const MatRF& u, const Tuple& x);

enum class InduceMode { Recursive, Direct };
GeomCrystal induced(const UniCrystal& X, InduceMode mode = InduceMode::Recursive);

// F(x,y) = (x, v_x(y)) with v_x = vMap(f_X(x)); checks F o alpha = delta o (id x F) for x_i(a).
CheckResult diagonalize(const UniCrystal& X, const UniCrystal& Y, int i, const VerifyOptions& opt);

// u_w(b) in U for b in B^-, via a length-additive splitting w = w' w'' (splitAt = l(w')).
MatRF uW(const GroupCtx& ctx, const Word& word, const MatRF& b, int splitAt = -1);
MatRF uSimple(const GroupCtx& ctx, int i, const MatRF& b);

// A character sum_i coeff[i] chi_i of U, coefficients ordered as the labels.
struct UChar {
  std::vector<Rational> coeff;
  RatFunc operator()(const GroupCtx& ctx, const MatRF& u) const;
  static UChar basis(const GroupCtx& ctx, const std::vector<int>& labels);
  UChar leviPart(const GroupCtx& ctx, const std::vector<int>& J) const;  // chi^L: drop J
};

RatFunc chiW(const GroupCtx& ctx, const UChar& chi, const WeylElt& w, const MatRF& g);
RatFunc fChi(const GroupCtx& ctx, const UChar& chi, const UChar& chi2, const WeylElt& w, const MatRF& g);

std::string toJson(const UniCrystal& X);

}  // namespace cf

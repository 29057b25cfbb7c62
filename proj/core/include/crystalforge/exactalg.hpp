#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crystalforge/errors.hpp"

namespace cf {

using Int = mpz_class;
using Rational = mpq_class;

inline constexpr int kMaxVars = 24;

// Exponent vector with cached total degree.
struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint32_t deg = 0;

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool isOne() const { return deg == 0; }
  static Monomial var(int idx, unsigned power = 1);
};

// >0 when a precedes b in descending graded-lex order.
int grlexCompare(const Monomial& a, const Monomial& b);
Monomial mulMono(const Monomial& a, const Monomial& b);
bool monoDivides(const Monomial& a, const Monomial& b);  // a | b
Monomial divMono(const Monomial& b, const Monomial& a);  // b / a
Monomial gcdMono(const Monomial& a, const Monomial& b);

template <class K>
class PolyT {
 public:
  struct Term {
    Monomial m;
    K c;
  };

  PolyT() = default;
  explicit PolyT(int arity) : arity_(arity) {}

  static PolyT constant(const K& c, int arity = 0);
  static PolyT variable(int idx, int arity = 0);
  // Sorts and merges; drops zero coefficients.
  static PolyT fromTerms(int arity, std::vector<Term> terms);
  // Caller guarantees sorted, merged, nonzero terms.
  static PolyT fromSortedTerms(int arity, std::vector<Term> terms);

  int arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.isOne()); }
  bool isMonomial() const { return terms_.size() == 1; }
  bool isOne() const;
  K constantTerm() const;
  const Term& lead() const { return terms_.front(); }

  PolyT operator-() const;
  PolyT operator+(const PolyT& o) const;
  PolyT operator-(const PolyT& o) const;
  PolyT operator*(const PolyT& o) const;
  bool operator==(const PolyT& o) const;
  bool operator!=(const PolyT& o) const { return !(*this == o); }

  PolyT scaled(const K& k) const;
  PolyT mulTerm(const Monomial& m, const K& k) const;
  PolyT pow(unsigned e) const;
  PolyT withArity(int a) const;

  int degreeIn(int v) const;
  int minDegreeIn(int v) const;
  int totalDegree() const;
  Monomial monoContent() const;
  bool hasNegativeCoeff() const;
  // Highest variable index used plus one.
  int usedArity() const;

  Rational evaluate(const std::vector<Rational>& point) const;

 private:
  int arity_ = 0;
  std::vector<Term> terms_;  // descending grlex
};

extern template class PolyT<Int>;
extern template class PolyT<Rational>;

using Poly = PolyT<Rational>;
using ZPoly = PolyT<Int>;

// Term budget for symbolic expansion; 0 disables the check.
size_t termBudget();
class TermBudgetScope {
 public:
  explicit TermBudgetScope(size_t limit);
  ~TermBudgetScope();
  TermBudgetScope(const TermBudgetScope&) = delete;
  TermBudgetScope& operator=(const TermBudgetScope&) = delete;

 private:
  size_t prev_;
};
inline constexpr size_t kDefaultTermBudget = 2'000'000;

// Integer polynomial utilities.
Int content(const ZPoly& f);
ZPoly divideExactInt(const ZPoly& f, const Int& k);
std::optional<ZPoly> divideExact(const ZPoly& f, const ZPoly& g);
ZPoly divideMono(const ZPoly& f, const Monomial& m);
ZPoly evalVar(const ZPoly& f, int v, const Int& x);
ZPoly derivative(const ZPoly& f, int v);
// Heuristic gcd; falls back to the monomial/content gcd if the heuristic gives up.
ZPoly gcd(const ZPoly& f, const ZPoly& g);
ZPoly toZ(const Poly& p, Int* scale = nullptr);  // p * scale is integral
Poly toQ(const ZPoly& p);

enum class Reduce { Content, Full };

class RatFunc {
 public:
  RatFunc();
  RatFunc(long v);  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& v);  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const Poly& p);
  static RatFunc var(int idx, int arity = 0);
  static RatFunc fromParts(ZPoly num, ZPoly den, bool certified, Reduce r = Reduce::Full);

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool certified() const { return certified_; }
  RatFunc withCertificate(bool c) const;

  int arity() const;
  bool isZero() const { return num_.isZero(); }
  bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
  bool isOne() const;
  Rational constantValue() const;
  size_t termCount() const { return num_.size() + den_.size(); }

  RatFunc operator-() const;
  RatFunc inv() const;
  RatFunc pow(long e) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  // Stored-form identity (not mathematical equality; see equals()).
  bool sameForm(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  ZPoly num_, den_;
  bool certified_ = false;
};

enum class ArithOp { Add, Sub, Mul, Div, Neg, Inv };
RatFunc arith(ArithOp op, const RatFunc& a, const RatFunc& b = RatFunc(), Reduce r = Reduce::Full);

bool equals(const RatFunc& f, const RatFunc& g);
RatFunc cancel(const RatFunc& f);
RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& images);
Rational evalAt(const RatFunc& f, const std::vector<Rational>& point);
// Valuation in variable `v` of a function depending only on that variable.
long lowestDegree(const RatFunc& f, int v = 0);
RatFunc derivative(const RatFunc& f, int v);

using VarNames = std::vector<std::string>;
VarNames defaultNames(int n, const std::string& prefix = "x");
std::string toString(const RatFunc& f, const VarNames& names);
std::string toString(const ZPoly& p, const VarNames& names);
// Subtraction-free input yields a certified result.
RatFunc parseRatFunc(const std::string& text, const VarNames& names);

std::string toString(const Rational& q);

}  // namespace cf

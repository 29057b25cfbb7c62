#include <algorithm>

#include "crystalforge/exactalg.hpp"

namespace cf {

namespace {

ZPoly zconst(long v, int arity = 0) { return ZPoly::constant(Int(v), arity); }

struct Parts {
  ZPoly num, den;
};

// Joint integer content, joint monomial content, positive leading denominator.
void normalizeContent(Parts& p) {
  if (p.den.isZero()) throw DivisionByZeroFunction();
  if (p.num.isZero()) {
    p.den = zconst(1, p.den.arity());
    return;
  }
  Int g;
  {
    Int cn = content(p.num), cd = content(p.den);
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  }
  if (g != 1) {
    p.num = divideExactInt(p.num, g);
    p.den = divideExactInt(p.den, g);
  }
  Monomial m = gcdMono(p.num.monoContent(), p.den.monoContent());
  if (!m.isOne()) {
    p.num = divideMono(p.num, m);
    p.den = divideMono(p.den, m);
  }
  if (sgn(p.den.lead().c) < 0) {
    p.num = -p.num;
    p.den = -p.den;
  }
}

bool hasNeg(const Parts& p) { return p.num.hasNegativeCoeff() || p.den.hasNegativeCoeff(); }

void normalize(Parts& p, bool certified, Reduce r) {
  normalizeContent(p);
  if (r == Reduce::Content || p.num.isZero()) return;
  if (p.num.isMonomial() || p.den.isMonomial()) return;
  ZPoly g = gcd(p.num, p.den);
  if (g.isConstant()) return;
  Parts q{*divideExact(p.num, g), *divideExact(p.den, g)};
  normalizeContent(q);
  // Keep the subtraction-free witness when cancellation would destroy it.
  if (certified && hasNeg(q) && !hasNeg(p)) return;
  p = std::move(q);
}

}  // namespace

RatFunc::RatFunc() : num_(), den_(zconst(1)), certified_(false) {}

RatFunc::RatFunc(long v) : num_(zconst(v)), den_(zconst(1)), certified_(v > 0) {}

RatFunc::RatFunc(const Rational& v)
    : num_(ZPoly::constant(Int(v.get_num()))),
      den_(ZPoly::constant(Int(v.get_den()))),
      certified_(sgn(v) > 0) {}

RatFunc::RatFunc(const Poly& p) {
  Int scale;
  ZPoly z = toZ(p, &scale);
  bool nonneg = !p.isZero() && !p.hasNegativeCoeff();
  *this = fromParts(z, ZPoly::constant(scale, p.arity()), nonneg, Reduce::Content);
}

RatFunc RatFunc::var(int idx, int arity) {
  RatFunc f;
  f.num_ = ZPoly::variable(idx, arity);
  f.den_ = zconst(1, f.num_.arity());
  f.certified_ = true;
  return f;
}

RatFunc RatFunc::fromParts(ZPoly num, ZPoly den, bool certified, Reduce r) {
  Parts p{std::move(num), std::move(den)};
  normalize(p, certified, r);
  RatFunc f;
  f.num_ = std::move(p.num);
  f.den_ = std::move(p.den);
  f.certified_ = certified && !f.num_.isZero();
  return f;
}

RatFunc RatFunc::withCertificate(bool c) const {
  RatFunc f = *this;
  f.certified_ = c && !num_.isZero();
  return f;
}

int RatFunc::arity() const { return std::max(num_.arity(), den_.arity()); }

bool RatFunc::isOne() const { return num_.isOne() && den_.isOne(); }

Rational RatFunc::constantValue() const {
  if (!isConstant()) throw Error("not a constant function");
  Rational q(num_.constantTerm(), den_.constantTerm());
  q.canonicalize();
  return q;
}

RatFunc RatFunc::operator-() const {
  RatFunc f = *this;
  f.num_ = -num_;
  f.certified_ = false;
  return f;
}

RatFunc RatFunc::inv() const {
  if (num_.isZero()) throw DivisionByZeroFunction();
  return fromParts(den_, num_, certified_, Reduce::Content);
}

RatFunc RatFunc::pow(long e) const {
  if (e == 0) return RatFunc(1L);
  if (e < 0) return inv().pow(-e);
  RatFunc f;
  f.num_ = num_.pow(unsigned(e));
  f.den_ = den_.pow(unsigned(e));
  f.certified_ = certified_;
  return f;
}

namespace {

RatFunc addImpl(const RatFunc& a, const RatFunc& b, bool negB, Reduce r) {
  bool cert = a.certified() && b.certified() && !negB;
  if (b.isZero()) return a.withCertificate(a.certified());
  if (a.isZero()) return negB ? -b : b;
  const ZPoly& bn0 = b.num();
  ZPoly bn = negB ? -bn0 : bn0;
  if (a.den() == b.den()) return RatFunc::fromParts(a.num() + bn, a.den(), cert, r);
  if (r == Reduce::Content || a.den().isConstant() || b.den().isConstant()) {
    return RatFunc::fromParts(a.num() * b.den() + bn * a.den(), a.den() * b.den(), cert, r);
  }
  ZPoly g = gcd(a.den(), b.den());
  if (g.isConstant()) {
    return RatFunc::fromParts(a.num() * b.den() + bn * a.den(), a.den() * b.den(), cert, r);
  }
  ZPoly ad = *divideExact(a.den(), g);
  ZPoly bd = *divideExact(b.den(), g);
  RatFunc out = RatFunc::fromParts(a.num() * bd + bn * ad, a.den() * bd, cert, r);
  if (cert && (out.num().hasNegativeCoeff() || out.den().hasNegativeCoeff())) {
    return RatFunc::fromParts(a.num() * b.den() + bn * a.den(), a.den() * b.den(), cert, r);
  }
  return out;
}

RatFunc mulImpl(const RatFunc& a, const RatFunc& b, Reduce r) {
  bool cert = a.certified() && b.certified();
  if (a.isZero() || b.isZero()) return RatFunc();
  if (r == Reduce::Content || a.isConstant() || b.isConstant()) {
    return RatFunc::fromParts(a.num() * b.num(), a.den() * b.den(), cert, Reduce::Content);
  }
  ZPoly g1 = gcd(a.num(), b.den());
  ZPoly g2 = gcd(b.num(), a.den());
  ZPoly an = a.num(), bn = b.num(), ad = a.den(), bd = b.den();
  if (!g1.isConstant()) {
    an = *divideExact(an, g1);
    bd = *divideExact(bd, g1);
  }
  if (!g2.isConstant()) {
    bn = *divideExact(bn, g2);
    ad = *divideExact(ad, g2);
  }
  if (cert && (an.hasNegativeCoeff() || bn.hasNegativeCoeff() || ad.hasNegativeCoeff() ||
               bd.hasNegativeCoeff())) {
    return RatFunc::fromParts(a.num() * b.num(), a.den() * b.den(), cert, Reduce::Content);
  }
  return RatFunc::fromParts(an * bn, ad * bd, cert, Reduce::Content);
}

}  // namespace

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return addImpl(a, b, false, Reduce::Full); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return addImpl(a, b, true, Reduce::Full); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return mulImpl(a, b, Reduce::Full); }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.isZero()) throw DivisionByZeroFunction();
  return mulImpl(a, b.inv(), Reduce::Full);
}

RatFunc arith(ArithOp op, const RatFunc& a, const RatFunc& b, Reduce r) {
  switch (op) {
    case ArithOp::Add: return addImpl(a, b, false, r);
    case ArithOp::Sub: return addImpl(a, b, true, r);
    case ArithOp::Mul: return mulImpl(a, b, r);
    case ArithOp::Div:
      if (b.isZero()) throw DivisionByZeroFunction();
      return mulImpl(a, b.inv(), r);
    case ArithOp::Neg: return -a;
    case ArithOp::Inv: return a.inv();
  }
  throw Error("unknown arithmetic operation");
}

bool equals(const RatFunc& f, const RatFunc& g) {
  if (f.sameForm(g)) return true;
  if (f.isZero() != g.isZero()) return false;
  return f.num() * g.den() == g.num() * f.den();
}

RatFunc cancel(const RatFunc& f) {
  return RatFunc::fromParts(f.num(), f.den(), f.certified(), Reduce::Full);
}

RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& images) {
  int ua = std::max(f.num().usedArity(), f.den().usedArity());
  if (int(images.size()) < ua) throw Error("substitute: too few images");
  bool cert = f.certified();
  int outArity = 0;
  std::vector<int> d(ua, 0);
  for (int k = 0; k < ua; ++k) {
    d[k] = std::max(f.num().degreeIn(k), f.den().degreeIn(k));
    if (d[k] > 0) {
      cert = cert && images[k].certified();
      outArity = std::max(outArity, images[k].arity());
    }
  }
  bool fractional = false;
  for (int k = 0; k < ua; ++k)
    if (d[k] > 0 && !images[k].den().isConstant()) fractional = true;
  if (fractional) {
    // Term-by-term arithmetic keeps intermediate results reduced; far cheaper than
    // homogenizing when the images carry distinct denominators.
    std::vector<std::vector<RatFunc>> pw(ua);
    for (int k = 0; k < ua; ++k) {
      if (d[k] == 0) continue;
      pw[k].resize(d[k] + 1);
      pw[k][0] = RatFunc(1L);
      for (int e = 1; e <= d[k]; ++e) pw[k][e] = pw[k][e - 1] * images[k];
    }
    auto eval = [&](const ZPoly& p) {
      RatFunc acc(0L);
      for (const auto& t : p.terms()) {
        RatFunc term{Rational(t.c)};
        for (int k = 0; k < ua; ++k)
          if (t.m.e[k] > 0) term = term * pw[k][t.m.e[k]];
        acc = acc + term;
      }
      return acc;
    };
    RatFunc den = eval(f.den());
    if (den.isZero()) throw DivisionByZeroFunction("substitution forces a zero denominator");
    RatFunc out = eval(f.num()) / den;
    return out.withCertificate(cert && out.certified());
  }
  // Homogenize per variable so the common denominator prod q_k^{d_k} cancels.
  std::vector<std::vector<ZPoly>> P(ua), Q(ua);
  for (int k = 0; k < ua; ++k) {
    if (d[k] == 0) continue;
    P[k].resize(d[k] + 1);
    Q[k].resize(d[k] + 1);
    P[k][0] = zconst(1);
    Q[k][0] = zconst(1);
    for (int e = 1; e <= d[k]; ++e) {
      P[k][e] = P[k][e - 1] * images[k].num();
      Q[k][e] = Q[k][e - 1] * images[k].den();
    }
  }
  auto hom = [&](const ZPoly& p) {
    ZPoly acc(outArity);
    std::vector<ZPoly::Term> constTerms;
    for (const auto& t : p.terms()) {
      ZPoly term = ZPoly::constant(t.c, outArity);
      for (int k = 0; k < ua; ++k) {
        if (d[k] == 0) continue;
        int e = t.m.e[k];
        if (e > 0) term = term * P[k][e];
        if (d[k] - e > 0 && !Q[k][d[k] - e].isOne()) term = term * Q[k][d[k] - e];
      }
      acc = acc + term;
    }
    return acc;
  };
  ZPoly num = hom(f.num());
  ZPoly den = hom(f.den());
  if (den.isZero()) throw DivisionByZeroFunction("substitution forces a zero denominator");
  return RatFunc::fromParts(std::move(num), std::move(den), cert, Reduce::Full);
}

Rational evalAt(const RatFunc& f, const std::vector<Rational>& point) {
  Rational d = f.den().evaluate(point);
  if (d == 0) throw PoleAtPoint();
  Rational n = f.num().evaluate(point);
  return n / d;
}

RatFunc derivative(const RatFunc& f, int v) {
  ZPoly n = derivative(f.num(), v) * f.den() - f.num() * derivative(f.den(), v);
  return RatFunc::fromParts(std::move(n), f.den() * f.den(), false, Reduce::Full);
}

long lowestDegree(const RatFunc& f, int v) {
  if (f.isZero()) throw ZeroFunction();
  return long(f.num().minDegreeIn(v)) - long(f.den().minDegreeIn(v));
}

}  // namespace cf

// Heuristic multivariate gcd over the integers (evaluation at a large integer,
// recursive gcd, xi-adic reconstruction, trial division).
#include <algorithm>

#include "crystalforge/exactalg.hpp"

namespace cf {

namespace {

constexpr int kHeuAttempts = 6;

Int maxNorm(const ZPoly& f) {
  Int m = 0;
  for (const auto& t : f.terms()) {
    if (cmp(abs(t.c), m) > 0) m = abs(t.c);
  }
  return m;
}

ZPoly positiveLead(const ZPoly& f) {
  if (!f.isZero() && sgn(f.lead().c) < 0) return -f;
  return f;
}

ZPoly primitivePart(const ZPoly& f) {
  if (f.isZero()) return f;
  return positiveLead(divideExactInt(f, content(f)));
}

Int intGcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Rebuild a polynomial in `v` from its value h at v = xi (symmetric digits).
std::optional<ZPoly> interpolate(ZPoly h, const Int& xi, int v, int maxDeg, int arity) {
  std::vector<ZPoly::Term> out;
  Int half = xi / 2;
  int i = 0;
  while (!h.isZero()) {
    if (i > maxDeg) return std::nullopt;
    std::vector<ZPoly::Term> digit;
    digit.reserve(h.size());
    for (const auto& t : h.terms()) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), t.c.get_mpz_t(), xi.get_mpz_t());
      if (cmp(r, half) > 0) r -= xi;
      if (sgn(r) != 0) digit.push_back({t.m, r});
    }
    ZPoly g = ZPoly::fromSortedTerms(h.arity(), digit);
    h = divideExactInt(h - g, xi);
    for (auto& t : digit) {
      if (i > 0) {
        if (t.m.e[v] + i > 0xFFFF) return std::nullopt;
        t.m.e[v] = static_cast<uint16_t>(t.m.e[v] + i);
        t.m.deg += i;
      }
      out.push_back(std::move(t));
    }
    ++i;
  }
  return ZPoly::fromTerms(arity, std::move(out));
}

std::optional<ZPoly> heu(const ZPoly& f0, const ZPoly& g0, int depth);

std::optional<ZPoly> heuImpl(const ZPoly& f0, const ZPoly& g0, int depth) {
  int ar = std::max(f0.arity(), g0.arity());
  if (f0.isConstant() && g0.isConstant())
    return ZPoly::constant(intGcd(f0.constantTerm(), g0.constantTerm()), ar);
  if (f0.isConstant()) return ZPoly::constant(intGcd(f0.constantTerm(), content(g0)), ar);
  if (g0.isConstant()) return ZPoly::constant(intGcd(g0.constantTerm(), content(f0)), ar);

  Int c = intGcd(content(f0), content(g0));
  ZPoly f = divideExactInt(f0, c);
  ZPoly g = divideExactInt(g0, c);

  int v = -1;
  for (int k = 0; k < kMaxVars && v < 0; ++k)
    if (f.degreeIn(k) > 0 || g.degreeIn(k) > 0) v = k;
  int maxDeg = std::min(f.degreeIn(v), g.degreeIn(v));

  Int fn = maxNorm(f), gn = maxNorm(g);
  Int b = 2 * std::min(fn, gn) + 29;
  Int sq = sqrt(b);
  Int xi = std::min(b, Int(99 * sq));
  Int alt = 2 * std::min(Int(fn / abs(f.lead().c)), Int(gn / abs(g.lead().c))) + 2;
  if (cmp(alt, xi) > 0) xi = alt;

  for (int attempt = 0; attempt < kHeuAttempts; ++attempt) {
    ZPoly ff = evalVar(f, v, xi);
    ZPoly gg = evalVar(g, v, xi);
    if (!ff.isZero() && !gg.isZero()) {
      auto hh = heu(ff, gg, depth + 1);
      if (hh) {
        auto h = interpolate(*hh, xi, v, maxDeg, ar);
        if (h && !h->isZero()) {
          ZPoly hp = primitivePart(*h);
          if (divideExact(f, hp) && divideExact(g, hp)) return hp.scaled(c);
        }
      }
    }
    Int s = sqrt(sqrt(xi));
    xi = xi * 73794 * s / 27011;
  }
  return std::nullopt;
}

std::optional<ZPoly> heu(const ZPoly& f0, const ZPoly& g0, int depth) {
  if (depth > kMaxVars + 1) return std::nullopt;
  return heuImpl(f0, g0, depth);
}

}  // namespace

ZPoly gcd(const ZPoly& f, const ZPoly& g) {
  int ar = std::max(f.arity(), g.arity());
  if (f.isZero()) return positiveLead(g).withArity(ar);
  if (g.isZero()) return positiveLead(f).withArity(ar);
  Monomial mf = f.monoContent(), mg = g.monoContent();
  Monomial m = gcdMono(mf, mg);
  Int cf = content(f), cg = content(g);
  Int c = intGcd(cf, cg);
  ZPoly ff = positiveLead(divideExactInt(divideMono(f, mf), cf));
  ZPoly gg = positiveLead(divideExactInt(divideMono(g, mg), cg));
  ZPoly h = ZPoly::constant(Int(1), ar);
  if (!ff.isConstant() && !gg.isConstant()) {
    if (ff == gg) {
      h = ff;
    } else if (auto r = heu(ff, gg, 0)) {
      h = primitivePart(*r);
    }
  }
  return h.mulTerm(m, c).withArity(ar);
}

}  // namespace cf

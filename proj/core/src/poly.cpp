#include <algorithm>
#include <unordered_map>

#include "crystalforge/exactalg.hpp"

namespace cf {

namespace {
thread_local size_t g_termBudget = 0;

void checkBudget(size_t n) {
  if (g_termBudget != 0 && n > g_termBudget) {
    throw TermBudgetExceeded("polynomial expansion exceeds term budget (" +
                             std::to_string(n) + " > " + std::to_string(g_termBudget) + ")");
  }
}

template <class K>
bool isZeroK(const K& k) {
  return sgn(k) == 0;
}
}  // namespace

size_t termBudget() { return g_termBudget; }
TermBudgetScope::TermBudgetScope(size_t limit) : prev_(g_termBudget) { g_termBudget = limit; }
TermBudgetScope::~TermBudgetScope() { g_termBudget = prev_; }

Monomial Monomial::var(int idx, unsigned power) {
  if (idx < 0 || idx >= kMaxVars) throw Error("variable index out of range");
  if (power > 0xFFFF) throw Error("exponent overflow");
  Monomial m;
  m.e[idx] = static_cast<uint16_t>(power);
  m.deg = power;
  return m;
}

int grlexCompare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  }
  return 0;
}

Monomial mulMono(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
    if (s > 0xFFFF) throw Error("exponent overflow");
    r.e[i] = static_cast<uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

bool monoDivides(const Monomial& a, const Monomial& b) {
  if (a.deg > b.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial divMono(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(b.e[i] - a.e[i]);
  r.deg = b.deg - a.deg;
  return r;
}

Monomial gcdMono(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

namespace {
struct MonoHash {
  size_t operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ULL;
    for (uint16_t x : m.e) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return size_t(h);
  }
};

template <class Term>
void sortTerms(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(),
            [](const Term& x, const Term& y) { return grlexCompare(x.m, y.m) > 0; });
}
}  // namespace

template <class K>
PolyT<K> PolyT<K>::constant(const K& c, int arity) {
  PolyT p(arity);
  if (!isZeroK(c)) p.terms_.push_back({Monomial{}, c});
  return p;
}

template <class K>
PolyT<K> PolyT<K>::variable(int idx, int arity) {
  PolyT p(std::max(arity, idx + 1));
  p.terms_.push_back({Monomial::var(idx), K(1)});
  return p;
}

template <class K>
PolyT<K> PolyT<K>::fromTerms(int arity, std::vector<Term> terms) {
  sortTerms(terms);
  PolyT p(arity);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && isZeroK(p.terms_.back().c)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && isZeroK(p.terms_.back().c)) p.terms_.pop_back();
  return p;
}

template <class K>
PolyT<K> PolyT<K>::fromSortedTerms(int arity, std::vector<Term> terms) {
  PolyT p(arity);
  p.terms_ = std::move(terms);
  return p;
}

template <class K>
bool PolyT<K>::isOne() const {
  return terms_.size() == 1 && terms_[0].m.isOne() && terms_[0].c == 1;
}

template <class K>
K PolyT<K>::constantTerm() const {
  if (!terms_.empty() && terms_.back().m.isOne()) return terms_.back().c;
  return K(0);
}

template <class K>
PolyT<K> PolyT<K>::operator-() const {
  PolyT r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

namespace {
template <class K, class Term>
std::vector<Term> mergeAdd(const std::vector<Term>& a, const std::vector<Term>& b, bool negateB) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size())
      cmp = -1;
    else if (j == b.size())
      cmp = 1;
    else
      cmp = grlexCompare(a[i].m, b[j].m);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(b[j++]);
      if (negateB) out.back().c = -out.back().c;
    } else {
      K c = negateB ? K(a[i].c - b[j].c) : K(a[i].c + b[j].c);
      if (sgn(c) != 0) out.push_back({a[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

template <class K>
PolyT<K> PolyT<K>::operator+(const PolyT& o) const {
  return fromSortedTerms(std::max(arity_, o.arity_), mergeAdd<K>(terms_, o.terms_, false));
}

template <class K>
PolyT<K> PolyT<K>::operator-(const PolyT& o) const {
  return fromSortedTerms(std::max(arity_, o.arity_), mergeAdd<K>(terms_, o.terms_, true));
}

template <class K>
PolyT<K> PolyT<K>::mulTerm(const Monomial& m, const K& k) const {
  PolyT r(arity_);
  if (isZeroK(k)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({mulMono(t.m, m), K(t.c * k)});
  return r;
}

template <class K>
PolyT<K> PolyT<K>::operator*(const PolyT& o) const {
  int ar = std::max(arity_, o.arity_);
  if (isZero() || o.isZero()) return PolyT(ar);
  if (o.terms_.size() == 1) {
    auto r = mulTerm(o.terms_[0].m, o.terms_[0].c);
    r.arity_ = ar;
    return r;
  }
  if (terms_.size() == 1) {
    auto r = o.mulTerm(terms_[0].m, terms_[0].c);
    r.arity_ = ar;
    return r;
  }
  size_t bound = terms_.size() * o.terms_.size();
  if (g_termBudget != 0 && bound > 64 * g_termBudget) checkBudget(bound);
  std::unordered_map<Monomial, K, MonoHash> acc;
  acc.reserve(std::min<size_t>(bound, 1 << 22));
  Monomial m;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      m = mulMono(a.m, b.m);
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, K(a.c * b.c));
      } else {
        it->second += a.c * b.c;
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [mm, c] : acc)
    if (!isZeroK(c)) out.push_back({mm, std::move(c)});
  checkBudget(out.size());
  sortTerms(out);
  return fromSortedTerms(ar, std::move(out));
}

template <class K>
bool PolyT<K>::operator==(const PolyT& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  }
  return true;
}

template <class K>
PolyT<K> PolyT<K>::scaled(const K& k) const {
  return mulTerm(Monomial{}, k);
}

template <class K>
PolyT<K> PolyT<K>::pow(unsigned e) const {
  PolyT result = constant(K(1), arity_);
  PolyT base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class K>
PolyT<K> PolyT<K>::withArity(int a) const {
  PolyT r = *this;
  r.arity_ = a;
  return r;
}

template <class K>
int PolyT<K>::degreeIn(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[v]);
  return d;
}

template <class K>
int PolyT<K>::minDegreeIn(int v) const {
  if (terms_.empty()) return 0;
  int d = 1 << 30;
  for (const auto& t : terms_) d = std::min<int>(d, t.m.e[v]);
  return d;
}

template <class K>
int PolyT<K>::totalDegree() const {
  return terms_.empty() ? 0 : int(terms_.front().m.deg);
}

template <class K>
Monomial PolyT<K>::monoContent() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().m;
  for (const auto& t : terms_) {
    g = gcdMono(g, t.m);
    if (g.isOne()) break;
  }
  return g;
}

template <class K>
bool PolyT<K>::hasNegativeCoeff() const {
  for (const auto& t : terms_)
    if (sgn(t.c) < 0) return true;
  return false;
}

template <class K>
int PolyT<K>::usedArity() const {
  int a = 0;
  for (const auto& t : terms_)
    for (int i = kMaxVars - 1; i >= a; --i)
      if (t.m.e[i]) {
        a = i + 1;
        break;
      }
  return a;
}

template <class K>
Rational PolyT<K>::evaluate(const std::vector<Rational>& point) const {
  int ua = usedArity();
  if (int(point.size()) < ua) throw Error("evaluation point has too few coordinates");
  std::vector<std::vector<Rational>> powers(ua);
  for (int v = 0; v < ua; ++v) {
    int d = degreeIn(v);
    powers[v].resize(d + 1);
    powers[v][0] = 1;
    for (int k = 1; k <= d; ++k) powers[v][k] = powers[v][k - 1] * point[v];
  }
  Rational sum = 0;
  Rational term;
  for (const auto& t : terms_) {
    term = t.c;
    for (int v = 0; v < ua; ++v)
      if (t.m.e[v]) term *= powers[v][t.m.e[v]];
    sum += term;
  }
  return sum;
}

template class PolyT<Int>;
template class PolyT<Rational>;

Int content(const ZPoly& f) {
  Int g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly divideExactInt(const ZPoly& f, const Int& k) {
  if (k == 1) return f;
  std::vector<ZPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Int q;
    mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), k.get_mpz_t());
    out.push_back({t.m, std::move(q)});
  }
  return ZPoly::fromSortedTerms(f.arity(), std::move(out));
}

ZPoly divideMono(const ZPoly& f, const Monomial& m) {
  if (m.isOne()) return f;
  std::vector<ZPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({divMono(t.m, m), t.c});
  return ZPoly::fromSortedTerms(f.arity(), std::move(out));
}

ZPoly evalVar(const ZPoly& f, int v, const Int& x) {
  int d = f.degreeIn(v);
  std::vector<Int> pw(d + 1);
  pw[0] = 1;
  for (int k = 1; k <= d; ++k) pw[k] = pw[k - 1] * x;
  std::vector<ZPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = t.m;
    int e = m.e[v];
    m.e[v] = 0;
    m.deg -= e;
    out.push_back({m, Int(t.c * pw[e])});
  }
  return ZPoly::fromTerms(f.arity(), std::move(out));
}

ZPoly derivative(const ZPoly& f, int v) {
  std::vector<ZPoly::Term> out;
  for (const auto& t : f.terms()) {
    int e = t.m.e[v];
    if (!e) continue;
    Monomial m = t.m;
    --m.e[v];
    --m.deg;
    out.push_back({m, Int(t.c * e)});
  }
  return ZPoly::fromTerms(f.arity(), std::move(out));
}

namespace {
// Cheap non-divisibility test at a fixed integer point.
bool quickReject(const ZPoly& f, const ZPoly& g) {
  static const long primes[kMaxVars] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  int ua = std::max(f.usedArity(), g.usedArity());
  std::vector<Rational> pt(ua);
  for (int i = 0; i < ua; ++i) pt[i] = primes[i];
  Rational gv = g.evaluate(pt);
  if (gv == 0) return false;
  Rational fv = f.evaluate(pt);
  return !mpz_divisible_p(fv.get_num_mpz_t(), gv.get_num_mpz_t());
}
}  // namespace

std::optional<ZPoly> divideExact(const ZPoly& f, const ZPoly& g) {
  if (g.isZero()) throw DivisionByZeroFunction();
  int ar = std::max(f.arity(), g.arity());
  if (f.isZero()) return ZPoly(ar);
  const auto& gl = g.lead();
  if (g.isMonomial()) {
    std::vector<ZPoly::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
      if (!monoDivides(gl.m, t.m) || !mpz_divisible_p(t.c.get_mpz_t(), gl.c.get_mpz_t()))
        return std::nullopt;
      Int q;
      mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), gl.c.get_mpz_t());
      out.push_back({divMono(t.m, gl.m), std::move(q)});
    }
    return ZPoly::fromSortedTerms(ar, std::move(out));
  }
  if (f.totalDegree() < g.totalDegree()) return std::nullopt;
  for (int v = 0; v < kMaxVars; ++v) {
    if (g.degreeIn(v) > f.degreeIn(v)) return std::nullopt;
  }
  if (quickReject(f, g)) return std::nullopt;
  std::vector<ZPoly::Term> q;
  ZPoly r = f;
  while (!r.isZero()) {
    const auto& rl = r.lead();
    if (!monoDivides(gl.m, rl.m) || !mpz_divisible_p(rl.c.get_mpz_t(), gl.c.get_mpz_t()))
      return std::nullopt;
    Int c;
    mpz_divexact(c.get_mpz_t(), rl.c.get_mpz_t(), gl.c.get_mpz_t());
    Monomial m = divMono(rl.m, gl.m);
    r = r - g.mulTerm(m, c);
    q.push_back({m, std::move(c)});
  }
  return ZPoly::fromSortedTerms(ar, std::move(q));
}

ZPoly toZ(const Poly& p, Int* scale) {
  Int l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  std::vector<ZPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.c * l;
    out.push_back({t.m, Int(c.get_num())});
  }
  if (scale) *scale = l;
  return ZPoly::fromSortedTerms(p.arity(), std::move(out));
}

Poly toQ(const ZPoly& p) {
  std::vector<Poly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.m, Rational(t.c)});
  return Poly::fromSortedTerms(p.arity(), std::move(out));
}

}  // namespace cf

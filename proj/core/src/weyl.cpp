#include "crystalforge/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace cf {

long dot(const IVec& a, const IVec& b) {
  long s = 0;
  for (size_t k = 0; k < a.size() && k < b.size(); ++k) s += a[k] * b[k];
  return s;
}

namespace {
IVec unit(int n, int k, long v = 1) {
  IVec e(n, 0);
  e[k] = v;
  return e;
}
IVec diffUnit(int n, int a, int b) {
  IVec e(n, 0);
  e[a] = 1;
  e[b] = -1;
  return e;
}

std::shared_ptr<RootDatum> typeA(GroupKind kind, int n) {
  if (n < 2 || n > 8) throw Error("unsupported matrix size");
  auto d = std::make_shared<RootDatum>();
  d->kind = kind;
  d->n = n;
  d->name = (kind == GroupKind::GL ? "GL" : "SL") + std::to_string(n);
  for (int i = 1; i < n; ++i) {
    d->labels.push_back(i);
    d->roots.push_back(diffUnit(n, i - 1, i));
    d->coroots.push_back(diffUnit(n, i - 1, i));
  }
  return d;
}
}  // namespace

DatumPtr RootDatum::GL(int n) { return typeA(GroupKind::GL, n); }
DatumPtr RootDatum::SL(int n) { return typeA(GroupKind::SL, n); }

DatumPtr RootDatum::foldedC2() {
  auto d = std::make_shared<RootDatum>();
  d->kind = GroupKind::FoldedC2;
  d->n = 4;
  d->name = "C2folded";
  d->labels = {1, 2};
  // Characters on diag(t1..t4); alpha_1 = alpha'_1 = alpha'_3 on the fixed torus.
  d->roots = {{1, -1, 0, 0}, {0, 1, -1, 0}};
  // alpha_1^v = alpha'_1^v + alpha'_3^v, alpha_2^v = alpha'_2^v.
  d->coroots = {{1, -1, 1, -1}, {0, 1, -1, 0}};
  return d;
}

DatumPtr RootDatum::D4() {
  auto d = std::make_shared<RootDatum>();
  d->kind = GroupKind::D4;
  d->n = 4;
  d->name = "D4";
  d->labels = {0, 1, 2, 3};
  d->roots = {{0, 1, -1, 0}, {1, -1, 0, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}};
  d->coroots = d->roots;
  return d;
}

DatumPtr RootDatum::byName(const std::string& name) {
  if (name == "C2folded") return foldedC2();
  if (name == "D4") return D4();
  if (name.size() == 3 && (name.rfind("GL", 0) == 0 || name.rfind("SL", 0) == 0) &&
      name[2] >= '2' && name[2] <= '8') {
    int n = name[2] - '0';
    return name[0] == 'G' ? GL(n) : SL(n);
  }
  throw Error("unknown group '" + name + "'");
}

int RootDatum::pos(int label) const {
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return int(k);
  throw UnsupportedIndex("index " + std::to_string(label) + " not in " + name);
}

bool RootDatum::hasLabel(int label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

long RootDatum::cartan(int i, int j) const { return dot(coroot(i), root(j)); }

int RootDatum::braidOrder(int i, int j) const {
  if (i == j) return 1;
  switch (cartan(i, j) * cartan(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
  }
  throw Error("invalid Cartan pairing");
}

IVec RootDatum::charKey(const IVec& l) const {
  switch (kind) {
    case GroupKind::SL: {
      IVec r = l;
      for (auto& x : r) x -= l.back();
      return r;
    }
    case GroupKind::FoldedC2: return {l[0] - l[3], l[1] - l[2], 0, 0};
    default: return l;
  }
}

IVec RootDatum::reflectCochar(int i, const IVec& v) const {
  long p = dot(v, root(i));
  IVec r = v;
  const IVec& c = coroot(i);
  for (int k = 0; k < n; ++k) r[k] -= p * c[k];
  return r;
}

IVec RootDatum::reflectChar(int i, const IVec& l) const {
  long p = dot(coroot(i), l);
  IVec r = l;
  const IVec& a = root(i);
  for (int k = 0; k < n; ++k) r[k] -= p * a[k];
  return r;
}

namespace {

// A strictly dominant cocharacter in the coroot span; its W-orbit is free.
IVec regularVector(const RootDatum& d) {
  int r = d.rank();
  std::vector<long> c(r, 1);
  for (;;) {
    IVec v(d.n, 0);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < d.n; ++k) v[k] += c[j] * d.coroots[j][k];
    bool ok = true;
    for (int i = 0; i < r; ++i)
      if (dot(v, d.roots[i]) <= 0) ok = false;
    if (ok) return v;
    int k = 0;
    while (k < r && ++c[k] > 16) c[k++] = 1;
    if (k == r) throw Error("no regular vector found");
  }
}

std::map<std::string, IVec>& regularCache() {
  static std::map<std::string, IVec> cache;
  return cache;
}

const IVec& regular(const RootDatum& d) {
  auto& cache = regularCache();
  auto it = cache.find(d.name);
  if (it == cache.end()) it = cache.emplace(d.name, regularVector(d)).first;
  return it->second;
}

}  // namespace

WeylElt WeylElt::identity(const DatumPtr& d) { return fromWord(d, {}); }

WeylElt WeylElt::fromWord(const DatumPtr& d, const Word& word) {
  WeylElt w;
  w.d_ = d;
  IVec v = regular(*d);
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = d->reflectCochar(*it, v);
  w.canon_ = v;
  // Greedy smallest left descent gives the lexicographically smallest reduced word.
  IVec u = v;
  for (;;) {
    int found = -1;
    std::vector<int> sorted = d->labels;
    std::sort(sorted.begin(), sorted.end());
    for (int i : sorted) {
      if (dot(u, d->root(i)) < 0) {
        found = i;
        break;
      }
    }
    if (found < 0) break;
    w.word_.push_back(found);
    u = d->reflectCochar(found, u);
  }
  return w;
}

WeylElt WeylElt::longest(const DatumPtr& d, const std::vector<int>& J) {
  WeylElt w = identity(d);
  for (bool grew = true; grew;) {
    grew = false;
    for (int j : J) {
      WeylElt x = w * fromWord(d, {j});
      if (x.length() > w.length()) {
        w = x;
        grew = true;
      }
    }
  }
  return w;
}

WeylElt WeylElt::longest(const DatumPtr& d) { return longest(d, d->labels); }

WeylElt WeylElt::inverse() const {
  Word r(word_.rbegin(), word_.rend());
  return fromWord(d_, r);
}

WeylElt WeylElt::operator*(const WeylElt& o) const {
  Word w = word_;
  w.insert(w.end(), o.word_.begin(), o.word_.end());
  return fromWord(d_, w);
}

IVec WeylElt::applyCochar(const IVec& v) const {
  IVec r = v;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) r = d_->reflectCochar(*it, r);
  return r;
}

IVec WeylElt::applyChar(const IVec& l) const {
  IVec r = l;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) r = d_->reflectChar(*it, r);
  return r;
}

bool WeylElt::hasLeftDescent(int i) const { return dot(canon_, d_->root(i)) < 0; }

bool WeylElt::hasRightDescent(int i) const {
  return (*this * fromWord(d_, {i})).length() < length();
}

std::vector<int> WeylElt::permutation() const {
  if (d_->kind != GroupKind::GL && d_->kind != GroupKind::SL)
    throw NotSupported("permutation() is defined for type A only");
  std::vector<int> p(d_->n);
  for (int k = 0; k < d_->n; ++k) {
    IVec img = applyCochar(unit(d_->n, k));
    for (int j = 0; j < d_->n; ++j)
      if (img[j] == 1) p[k] = j;
  }
  return p;
}

std::string WeylElt::str() const {
  if (word_.empty()) return "e";
  std::string s;
  for (int i : word_) s += "s" + std::to_string(i);
  return s;
}

std::vector<WeylElt> allElements(const DatumPtr& d) {
  std::vector<WeylElt> out;
  std::set<IVec> seen;
  std::queue<WeylElt> q;
  q.push(WeylElt::identity(d));
  seen.insert(q.front().canonical());
  while (!q.empty()) {
    WeylElt x = q.front();
    q.pop();
    out.push_back(x);
    for (int i : d->labels) {
      WeylElt y = x * WeylElt::fromWord(d, {i});
      if (seen.insert(y.canonical()).second) q.push(y);
    }
  }
  std::sort(out.begin(), out.end(), [](const WeylElt& a, const WeylElt& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word() < b.word();
  });
  return out;
}

namespace {
void collectWords(const WeylElt& w, Word& prefix, std::vector<Word>& out, size_t cap) {
  if (out.size() >= cap) return;
  if (w.length() == 0) {
    out.push_back(prefix);
    return;
  }
  std::vector<int> labels = w.datum()->labels;
  std::sort(labels.begin(), labels.end());
  for (int i : labels) {
    if (!w.hasLeftDescent(i)) continue;
    prefix.push_back(i);
    collectWords(WeylElt::fromWord(w.datum(), {i}) * w, prefix, out, cap);
    prefix.pop_back();
  }
}
}  // namespace

std::vector<Word> reducedWords(const WeylElt& w, size_t cap) {
  std::vector<Word> out;
  Word prefix;
  collectWords(w, prefix, out, std::max<size_t>(cap, 1));
  return out;
}

bool isReduced(const DatumPtr& d, const Word& word) {
  return WeylElt::fromWord(d, word).length() == int(word.size());
}

WeylElt demazure(const WeylElt& a, const WeylElt& b) {
  WeylElt r = a;
  for (int i : b.word()) {
    WeylElt x = r * WeylElt::fromWord(r.datum(), {i});
    if (x.length() > r.length()) r = x;
  }
  return r;
}

WeylElt demazureOfWord(const DatumPtr& d, const Word& word) {
  WeylElt r = WeylElt::identity(d);
  for (int i : word) r = demazure(r, WeylElt::fromWord(d, {i}));
  return r;
}

WeylElt projectJ(const WeylElt& w, const std::vector<int>& J) {
  WeylElt r = WeylElt::identity(w.datum());
  for (int i : w.word())
    if (std::find(J.begin(), J.end(), i) != J.end()) r = demazure(r, WeylElt::fromWord(w.datum(), {i}));
  return r;
}

WeylElt wLevi(const DatumPtr& d, const std::vector<int>& J, const std::vector<int>& Jp) {
  for (int j : J)
    if (std::find(Jp.begin(), Jp.end(), j) == Jp.end()) throw Error("wLevi requires J subset of J'");
  return WeylElt::longest(d, J) * WeylElt::longest(d, Jp);
}

Word wmnWord(int m, int n) {
  Word w;
  for (int k = 0; k < n; ++k)
    for (int i = m + k; i >= 1 + k; --i) w.push_back(i);
  return w;
}

// ---------------------------------------------------------------- lattices

namespace {

struct Frac {
  long p = 0, q = 1;
  Frac() = default;
  Frac(long a, long b = 1) : p(a), q(b) { norm(); }
  void norm() {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
  }
  Frac operator-(const Frac& o) const { return Frac(p * o.q - o.p * q, q * o.q); }
  Frac operator*(const Frac& o) const { return Frac(p * o.p, q * o.q); }
  Frac operator/(const Frac& o) const { return Frac(p * o.q, q * o.p); }
  bool zero() const { return p == 0; }
};

int rationalRank(const IMat& rows, int cols) {
  std::vector<std::vector<Frac>> m;
  for (const auto& r : rows) {
    std::vector<Frac> fr;
    for (int k = 0; k < cols; ++k) fr.emplace_back(r[k]);
    m.push_back(fr);
  }
  int rank = 0;
  for (int c = 0; c < cols && rank < int(m.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < int(m.size()); ++r)
      if (!m[r][c].zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < int(m.size()); ++r) {
      if (r == rank || m[r][c].zero()) continue;
      Frac f = m[r][c] / m[rank][c];
      for (int k = 0; k < cols; ++k) m[r][k] = m[r][k] - f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Coordinates of v in the simple-coroot basis, scaled to integers.
IVec corootCoords(const RootDatum& d, const IVec& v) {
  int r = d.rank();
  // Solve sum_j c_j <alpha_j^v, alpha_i> = <v, alpha_i>.
  std::vector<std::vector<Frac>> a(r, std::vector<Frac>(r + 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = Frac(dot(d.coroots[j], d.roots[i]));
    a[i][r] = Frac(dot(v, d.roots[i]));
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (a[piv][c].zero()) ++piv;
    std::swap(a[c], a[piv]);
    for (int i = 0; i < r; ++i) {
      if (i == c || a[i][c].zero()) continue;
      Frac f = a[i][c] / a[c][c];
      for (int k = 0; k <= r; ++k) a[i][k] = a[i][k] - f * a[c][k];
    }
  }
  std::vector<Frac> sol(r);
  long l = 1;
  for (int i = 0; i < r; ++i) {
    sol[i] = a[i][r] / a[i][i];
    l = std::lcm(l, sol[i].q);
  }
  IVec out(r);
  for (int i = 0; i < r; ++i) out[i] = sol[i].p * (l / sol[i].q);
  return out;
}

IVec fromCorootCoords(const RootDatum& d, const IVec& c) {
  IVec v(d.n, 0);
  for (int j = 0; j < d.rank(); ++j)
    for (int k = 0; k < d.n; ++k) v[k] += c[j] * d.coroots[j][k];
  return v;
}

long floorDiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithResult smithRows(const IMat& M0, int cols) {
  IMat M = M0;
  int rows = int(M.size());
  IMat W(cols, IVec(cols, 0));
  for (int k = 0; k < cols; ++k) W[k][k] = 1;
  SmithResult res;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      int pr = -1, pc = -1;
      long best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          long a = M[i][j] < 0 ? -M[i][j] : M[i][j];
          if (a != 0 && (best == 0 || a < best)) {
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (pr < 0) {
        res.W = W;
        return res;
      }
      std::swap(M[t], M[pr]);
      if (pc != t) {
        for (int i = 0; i < rows; ++i) std::swap(M[i][t], M[i][pc]);
        std::swap(W[t], W[pc]);
      }
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long q = floorDiv(M[i][t], M[t][t]);
        if (q)
          for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        long q = floorDiv(M[t][j], M[t][t]);
        if (q) {
          for (int i = 0; i < rows; ++i) M[i][j] -= q * M[i][t];
          for (int k = 0; k < cols; ++k) W[t][k] += q * W[j][k];
        }
        if (M[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    res.diag.push_back(M[t][t]);
  }
  res.W = W;
  return res;
}

CochLattice saturateInCoroots(const DatumPtr& d, const IMat& gens) {
  IMat coords;
  for (const auto& g : gens) {
    IVec c = corootCoords(*d, g);
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) coords.push_back(c);
  }
  CochLattice L;
  L.ambient = d->n;
  if (coords.empty()) return L;
  SmithResult s = smithRows(coords, d->rank());
  for (size_t k = 0; k < s.diag.size(); ++k) L.basis.push_back(fromCorootCoords(*d, s.W[k]));
  return L;
}

bool CochLattice::contains(const IVec& v) const {
  IMat rows = basis;
  rows.push_back(v);
  return rationalRank(rows, ambient) == rank();
}

bool CochLattice::contains(const CochLattice& o) const {
  for (const auto& v : o.basis)
    if (!contains(v)) return false;
  return true;
}

CochLattice latticeTw(const WeylElt& w) {
  const auto& d = w.datum();
  IMat gens;
  for (int i : d->labels) {
    IVec img = w.applyCochar(d->coroot(i));
    for (int k = 0; k < d->n; ++k) img[k] -= d->coroot(i)[k];
    gens.push_back(img);
  }
  return saturateInCoroots(d, gens);
}

CochLattice applyToLattice(const WeylElt& w, const CochLattice& L) {
  IMat gens;
  for (const auto& b : L.basis) gens.push_back(w.applyCochar(b));
  return saturateInCoroots(w.datum(), gens);
}

CochLattice latticeSum(const DatumPtr& d, const CochLattice& a, const CochLattice& b) {
  IMat gens = a.basis;
  gens.insert(gens.end(), b.basis.begin(), b.basis.end());
  return saturateInCoroots(d, gens);
}

CochLattice tildeTorusBase(const DatumPtr& d, int i) { return saturateInCoroots(d, {d->coroot(i)}); }

CochLattice tildeTorusSeq(const DatumPtr& d, const Word& seq) {
  CochLattice L;
  L.ambient = d->n;
  WeylElt w = WeylElt::identity(d);
  for (int i : seq) {
    WeylElt si = WeylElt::fromWord(d, {i});
    WeylElt ws = w * si;
    L = applyToLattice(si, L);
    if (ws.length() > w.length()) {
      w = ws;
    } else {
      L = latticeSum(d, L, tildeTorusBase(d, i));
    }
  }
  return L;
}

SpecialReport isSpecial(const WeylElt& w, const std::vector<int>& J) {
  WeylElt p = projectJ(w, J);
  WeylElt sigma = p.inverse() * w;
  int r = latticeTw(sigma).rank();
  return {w.length() == p.length() + r, w.length(), p.length(), r};
}

ZetaReport zetaOrbitsBasis(const WeylElt& w) {
  const auto& d = w.datum();
  ZetaReport rep;
  std::map<int, int> zeta, zinv;
  std::vector<int> labels = d->labels;
  std::sort(labels.begin(), labels.end());
  for (int i : labels) {
    IVec img = d->charKey(w.applyChar(d->root(i)));
    for (int j : labels) {
      if (img == d->charKey(d->root(j))) {
        rep.I.push_back(i);
        rep.zeta.emplace_back(i, j);
        zeta[i] = j;
        zinv[j] = i;
      }
    }
  }
  std::set<std::vector<int>> seen;
  for (int i : labels) {
    std::set<int> o{i};
    if (zeta.count(i) || zinv.count(i)) {
      for (int k = i; zeta.count(k) && !o.count(zeta[k]);) o.insert(k = zeta[k]);
      for (int k = i; zinv.count(k) && !o.count(zinv[k]);) o.insert(k = zinv[k]);
    }
    std::vector<int> ov(o.begin(), o.end());
    rep.orbits.push_back(ov);
    if (seen.insert(ov).second) rep.basis.push_back(ov);
  }
  return rep;
}

std::string wordToString(const Word& w) {
  std::ostringstream os;
  for (size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  return os.str();
}

Word parseWord(const std::string& s) {
  Word w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    if (tok[0] == 's') tok = tok.substr(1);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
      throw Error("malformed word token '" + tok + "'");
    w.push_back(std::stoi(tok));
  }
  return w;
}

}  // namespace cf

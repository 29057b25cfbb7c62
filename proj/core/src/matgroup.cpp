#include "crystalforge/matgroup.hpp"

#include <algorithm>
#include <sstream>

namespace cf {

MatRF::MatRF(int n) : n_(n), e_(size_t(n) * n, RatFunc()) {}

MatRF MatRF::identity(int n) {
  MatRF m(n);
  for (int k = 0; k < n; ++k) m(k, k) = RatFunc(1L);
  return m;
}

MatRF MatRF::diag(const std::vector<RatFunc>& d) {
  MatRF m(int(d.size()));
  for (size_t k = 0; k < d.size(); ++k) m(int(k), int(k)) = d[k];
  return m;
}

MatRF MatRF::fromRows(const std::vector<std::vector<RatFunc>>& rows) {
  MatRF m(int(rows.size()));
  for (int r = 0; r < m.n_; ++r) {
    if (int(rows[r].size()) != m.n_) throw Error("matrix must be square");
    for (int c = 0; c < m.n_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

MatRF MatRF::operator*(const MatRF& o) const {
  if (n_ != o.n_) throw Error("matrix size mismatch");
  MatRF m(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      // Collect the nonzero products first so sparse rows stay cheap.
      RatFunc acc;
      bool first = true;
      for (int k = 0; k < n_; ++k) {
        const RatFunc& a = (*this)(r, k);
        const RatFunc& b = o(k, c);
        if (a.isZero() || b.isZero()) continue;
        RatFunc p = a.isOne() ? b : (b.isOne() ? a : a * b);
        acc = first ? p : acc + p;
        first = false;
      }
      m(r, c) = acc;
    }
  return m;
}

MatRF MatRF::inverse() const {
  MatRF a = *this, inv = identity(n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (!a(r, c).isZero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw NonInvertible("matrix is singular as a rational function matrix");
    if (piv != c)
      for (int k = 0; k < n_; ++k) {
        std::swap(a(c, k), a(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
    RatFunc p = a(c, c);
    if (!p.isOne()) {
      RatFunc pi = p.inv();
      for (int k = 0; k < n_; ++k) {
        if (!a(c, k).isZero()) a(c, k) = a(c, k) * pi;
        if (!inv(c, k).isZero()) inv(c, k) = inv(c, k) * pi;
      }
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a(r, c).isZero()) continue;
      RatFunc f = a(r, c);
      for (int k = 0; k < n_; ++k) {
        if (!a(c, k).isZero()) a(r, k) = a(r, k) - f * a(c, k);
        if (!inv(c, k).isZero()) inv(r, k) = inv(r, k) - f * inv(c, k);
      }
    }
  }
  return inv;
}

namespace {
RatFunc detRec(const MatRF& m, std::vector<int>& rows, std::vector<int>& cols) {
  size_t k = rows.size();
  if (k == 0) return RatFunc(1L);
  if (k == 1) return m(rows[0], cols[0]);
  int r = rows[0];
  std::vector<int> subRows(rows.begin() + 1, rows.end());
  RatFunc acc;
  for (size_t j = 0; j < k; ++j) {
    const RatFunc& e = m(r, cols[j]);
    if (e.isZero()) continue;
    std::vector<int> subCols;
    for (size_t t = 0; t < k; ++t)
      if (t != j) subCols.push_back(cols[t]);
    RatFunc term = e * detRec(m, subRows, subCols);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}
}  // namespace

RatFunc MatRF::det() const {
  std::vector<int> idx(n_);
  for (int k = 0; k < n_; ++k) idx[k] = k;
  std::vector<int> cols = idx;
  return detRec(*this, idx, cols);
}

std::vector<RatFunc> MatRF::diagonal() const {
  std::vector<RatFunc> d;
  for (int k = 0; k < n_; ++k) d.push_back((*this)(k, k));
  return d;
}

MatRF MatRF::map(const std::function<RatFunc(const RatFunc&)>& f) const {
  MatRF m(n_);
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = f(e_[k]);
  return m;
}

bool MatRF::isUnitUpper() const {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c <= r; ++c)
      if (c == r ? !(*this)(r, c).isOne() : !(*this)(r, c).isZero()) return false;
  return true;
}

bool MatRF::isUnitLower() const {
  for (int r = 0; r < n_; ++r)
    for (int c = r; c < n_; ++c)
      if (c == r ? !(*this)(r, c).isOne() : !(*this)(r, c).isZero()) return false;
  return true;
}

bool MatRF::isLower() const {
  for (int r = 0; r < n_; ++r)
    for (int c = r + 1; c < n_; ++c)
      if (!(*this)(r, c).isZero()) return false;
  return true;
}

bool MatRF::isDiagonal() const {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      if (r != c && !(*this)(r, c).isZero()) return false;
  return true;
}

bool MatRF::isIdentity() const { return isUnitUpper() && isLower(); }

std::vector<std::vector<std::string>> MatRF::toStrings(const VarNames& names) const {
  std::vector<std::vector<std::string>> out(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out[r].push_back(toString((*this)(r, c), names));
  return out;
}

std::string MatRF::str(const VarNames& names) const {
  std::ostringstream os;
  auto s = toStrings(names);
  os << "[";
  for (int r = 0; r < n_; ++r) {
    os << (r ? ", [" : "[");
    for (int c = 0; c < n_; ++c) os << (c ? ", " : "") << s[r][c];
    os << "]";
  }
  os << "]";
  return os.str();
}

bool equals(const MatRF& a, const MatRF& b) {
  if (a.n() != b.n()) return false;
  for (int r = 0; r < a.n(); ++r)
    for (int c = 0; c < a.n(); ++c)
      if (!equals(a(r, c), b(r, c))) return false;
  return true;
}

MatRF substitute(const MatRF& g, const std::vector<RatFunc>& images) {
  return g.map([&](const RatFunc& f) { return f.isConstant() ? f : substitute(f, images); });
}

std::vector<std::vector<Rational>> evalAt(const MatRF& g, const std::vector<Rational>& point) {
  std::vector<std::vector<Rational>> out(g.n());
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) out[r].push_back(evalAt(g(r, c), point));
  return out;
}

RatFunc minor(const MatRF& g, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw Error("minor needs equally many rows and columns");
  std::vector<int> r0, c0;
  for (int r : rows) {
    if (r < 1 || r > g.n()) throw Error("minor row out of range");
    r0.push_back(r - 1);
  }
  for (int c : cols) {
    if (c < 1 || c > g.n()) throw Error("minor column out of range");
    c0.push_back(c - 1);
  }
  return detRec(g, r0, c0);
}

int symbolicRank(const std::vector<std::vector<RatFunc>>& m0) {
  auto m = m0;
  if (m.empty()) return 0;
  int rows = int(m.size()), cols = int(m[0].size()), rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].isZero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c].isZero()) continue;
      RatFunc f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k)
        if (!m[rank][k].isZero()) m[r][k] = m[r][k] - f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

GaussTriple gauss(const MatRF& g) {
  int n = g.n();
  MatRF L = MatRF::identity(n), U = g;
  for (int k = 0; k < n; ++k) {
    if (U(k, k).isZero()) throw NotInBigCell("leading principal minor " + std::to_string(k + 1) + " vanishes");
    RatFunc pinv = U(k, k).inv();
    for (int i = k + 1; i < n; ++i) {
      if (U(i, k).isZero()) continue;
      RatFunc f = U(i, k) * pinv;
      L(i, k) = f;
      U(i, k) = RatFunc();
      for (int j = k + 1; j < n; ++j)
        if (!U(k, j).isZero()) U(i, j) = U(i, j) - f * U(k, j);
    }
  }
  GaussTriple res{L, MatRF(n), MatRF::identity(n)};
  for (int k = 0; k < n; ++k) {
    res.t(k, k) = U(k, k);
    RatFunc pinv = U(k, k).inv();
    for (int j = k + 1; j < n; ++j)
      if (!U(k, j).isZero()) res.uPlus(k, j) = U(k, j) * pinv;
  }
  return res;
}

MatRF piPlus(const MatRF& g) { return gauss(g).uPlus; }
MatRF piMinus(const MatRF& g) {
  auto gt = gauss(g);
  return gt.uMinus * gt.t;
}
MatRF prT(const MatRF& g) { return gauss(g).t; }

// ---------------------------------------------------------------- GroupCtx

CtxPtr GroupCtx::GL(int n) {
  auto c = std::make_shared<GroupCtx>();
  c->d_ = RootDatum::GL(n);
  for (int i = 1; i < n; ++i) c->pos_.push_back({i - 1});
  return c;
}

CtxPtr GroupCtx::SL(int n) {
  auto c = std::make_shared<GroupCtx>();
  c->d_ = RootDatum::SL(n);
  for (int i = 1; i < n; ++i) c->pos_.push_back({i - 1});
  return c;
}

CtxPtr GroupCtx::foldedC2() {
  auto c = std::make_shared<GroupCtx>();
  c->d_ = RootDatum::foldedC2();
  c->pos_ = {{0, 2}, {1}};
  return c;
}

CtxPtr GroupCtx::byName(const std::string& name) {
  if (name == "C2folded") return foldedC2();
  if (name == "D4") throw NotSupported("D4 has no matrix model; only Weyl combinatorics");
  auto d = RootDatum::byName(name);
  return d->kind == GroupKind::GL ? GL(d->n) : SL(d->n);
}

const std::vector<int>& GroupCtx::positions(int i) const { return pos_[d_->pos(i)]; }

MatRF GroupCtx::x(int i, const RatFunc& a) const {
  MatRF m = MatRF::identity(n());
  for (int p : positions(i)) m(p, p + 1) = a;
  return m;
}

MatRF GroupCtx::y(int i, const RatFunc& a) const {
  MatRF m = MatRF::identity(n());
  for (int p : positions(i)) m(p + 1, p) = a;
  return m;
}

MatRF GroupCtx::cochar(const IVec& lambda, const RatFunc& c) const {
  return MatRF::diag(cocharTorus(lambda, c));
}

Torus GroupCtx::cocharTorus(const IVec& lambda, const RatFunc& c) const {
  Torus t;
  for (int k = 0; k < n(); ++k) t.push_back(lambda[k] == 0 ? RatFunc(1L) : c.pow(lambda[k]));
  return t;
}

RatFunc GroupCtx::character(const IVec& lambda, const Torus& t) const {
  RatFunc num(1L), den(1L);
  for (int k = 0; k < n(); ++k) {
    if (lambda[k] > 0) num = num * t[k].pow(lambda[k]);
    if (lambda[k] < 0) den = den * t[k].pow(-lambda[k]);
  }
  return den.isOne() ? num : num / den;
}

MatRF GroupCtx::sbar(int i) const { return x(i, RatFunc(-1L)) * y(i, RatFunc(1L)) * x(i, RatFunc(-1L)); }

MatRF GroupCtx::wbarWord(const Word& w) const {
  MatRF m = MatRF::identity(n());
  for (int i : w) m = m * sbar(i);
  return m;
}

MatRF GroupCtx::wbar(const WeylElt& w) const { return wbarWord(w.word()); }

MatRF GroupCtx::rhoMinus1() const {
  Torus t;
  for (int k = 0; k < n(); ++k) t.push_back(RatFunc(k % 2 == 0 ? 1L : -1L));
  return MatRF::diag(t);
}

MatRF GroupCtx::iota(const MatRF& g) const {
  MatRF inv = g.inverse();
  MatRF out = inv;
  for (int r = 0; r < n(); ++r)
    for (int c = 0; c < n(); ++c)
      if ((r + c) % 2 == 1 && !out(r, c).isZero()) out(r, c) = -inv(r, c);
  return out;
}

std::vector<int> GroupCtx::permutationOf(const WeylElt& w) const {
  MatRF m = wbar(w);
  std::vector<int> p(n(), -1);
  for (int c = 0; c < n(); ++c)
    for (int r = 0; r < n(); ++r)
      if (!m(r, c).isZero()) p[c] = r;
  return p;
}

RatFunc GroupCtx::chi(int i, const MatRF& u) const {
  int p = positions(i)[0];
  return u(p, p + 1);
}

RatFunc GroupCtx::chiMinus(int i, const MatRF& um) const {
  int p = positions(i)[0];
  return um(p + 1, p);
}

RatFunc GroupCtx::chiBar(bool plus, int i, const MatRF& g) const {
  GaussTriple gt = gauss(g);
  return plus ? chi(i, gt.uPlus) : chiMinus(i, gt.uMinus);
}

MatRF GroupCtx::piOne(int i, const RatFunc& c) const { return y(i, c.inv()) * alphaCo(i, c); }

MatRF GroupCtx::piSeq(const Word& w, const std::vector<RatFunc>& c) const {
  MatRF m = MatRF::identity(n());
  for (size_t k = 0; k < w.size(); ++k) m = m * piOne(w[k], c.at(k));
  return m;
}

MatRF GroupCtx::piUpper(const Word& w, const std::vector<RatFunc>& c) const {
  MatRF m = MatRF::identity(n());
  for (size_t k = 0; k < w.size(); ++k) m = m * x(w[k], c.at(k));
  return m;
}

MatRF GroupCtx::thetaK(const Word& w, const std::vector<RatFunc>& c) const {
  MatRF m = piUpper(w, c);
  for (auto it = w.rbegin(); it != w.rend(); ++it) m = m * sbar(*it);
  return m;
}

MatRF GroupCtx::thetaL(const Word& w, const std::vector<RatFunc>& c) const {
  MatRF m = MatRF::identity(n());
  for (size_t k = 0; k < w.size(); ++k) m = m * y(w[k], c.at(k));
  return m;
}

MatRF GroupCtx::etaW(bool fwd, const WeylElt& w, const MatRF& arg) const {
  MatRF wb = wbar(w);
  if (fwd) return piMinus(arg * wb);
  return piPlus(wb * arg.inverse()).inverse();
}

MatRF GroupCtx::vMap(const MatRF& g) const {
  MatRF w0 = wbar(WeylElt::longest(d_));
  MatRF w0inv = w0.inverse();
  GaussTriple gt;
  try {
    gt = gauss(w0inv * g);
  } catch (const NotInBigCell&) {
    throw NotInCell("argument is not in the open Bruhat cell");
  }
  MatRF b = w0 * (gt.uMinus * gt.t) * w0inv;
  Torus tb = b.diagonal();
  for (auto& e : tb) e = e.inv();
  MatRF u = b * MatRF::diag(tb);
  return u * gt.uPlus;
}

bool GroupCtx::inBminusDoubleCoset(const MatRF& g, const WeylElt& w) const {
  auto perm = permutationOf(w);
  int N = n();
  for (int p = 1; p <= N; ++p)
    for (int q = 1; q <= N; ++q) {
      std::vector<std::vector<RatFunc>> sub;
      for (int r = 0; r < p; ++r) {
        std::vector<RatFunc> row;
        for (int c = q - 1; c < N; ++c) row.push_back(g(r, c));
        sub.push_back(row);
      }
      int expect = 0;
      for (int k = q - 1; k < N; ++k)
        if (perm[k] < p) ++expect;
      if (symbolicRank(sub) != expect) return false;
    }
  return true;
}

bool GroupCtx::inBDoubleCoset(const MatRF& g, const WeylElt& w) const {
  auto perm = permutationOf(w);
  int N = n();
  for (int p = 1; p <= N; ++p)
    for (int q = 1; q <= N; ++q) {
      std::vector<std::vector<RatFunc>> sub;
      for (int r = p - 1; r < N; ++r) {
        std::vector<RatFunc> row;
        for (int c = 0; c < q; ++c) row.push_back(g(r, c));
        sub.push_back(row);
      }
      int expect = 0;
      for (int k = 0; k < q; ++k)
        if (perm[k] >= p - 1) ++expect;
      if (symbolicRank(sub) != expect) return false;
    }
  return true;
}

std::vector<std::vector<Rational>> GroupCtx::invariantCharacters(const WeylElt& w) const {
  if (d_->kind != GroupKind::GL && d_->kind != GroupKind::SL)
    throw NotSupported("invariantCharacters needs a type A context");
  int N = n(), r = d_->rank();
  MatRF wb = wbar(w), wbi = wb.inverse();
  RatFunc a = RatFunc::var(0, 1);
  std::vector<std::vector<Rational>> eqs;
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      MatRF u = MatRF::identity(N);
      u(p, q) = a;
      MatRF conj = wbi * u * wb;
      if (!conj.isUnitUpper()) continue;  // root not in U(w)
      std::vector<Rational> row;
      for (int i : labels()) row.push_back(((chi(i, conj) - chi(i, u)) / a).constantValue());
      eqs.push_back(row);
    }
  // Nullspace by reduced row echelon form.
  std::vector<int> pivCol;
  int rank = 0;
  for (int c = 0; c < r && rank < int(eqs.size()); ++c) {
    int piv = -1;
    for (int k = rank; k < int(eqs.size()); ++k)
      if (eqs[k][c] != 0) {
        piv = k;
        break;
      }
    if (piv < 0) continue;
    std::swap(eqs[rank], eqs[piv]);
    Rational inv = 1 / eqs[rank][c];
    for (auto& v : eqs[rank]) v *= inv;
    for (int k = 0; k < int(eqs.size()); ++k) {
      if (k == rank || eqs[k][c] == 0) continue;
      Rational f = eqs[k][c];
      for (int j = 0; j < r; ++j) eqs[k][j] -= f * eqs[rank][j];
    }
    pivCol.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < r; ++c) {
    if (std::find(pivCol.begin(), pivCol.end(), c) != pivCol.end()) continue;
    std::vector<Rational> v(r, Rational(0));
    v[c] = 1;
    for (int k = 0; k < rank; ++k) v[pivCol[k]] = -eqs[k][c];
    basis.push_back(v);
  }
  return basis;
}

bool GroupCtx::checkCommutation(int i) const {
  RatFunc a = RatFunc::var(0, 2), b = RatFunc::var(1, 2);
  RatFunc s = RatFunc(1L) + a * b;
  MatRF lhs = x(i, a) * y(i, b);
  MatRF rhs = y(i, b / s) * alphaCo(i, s) * x(i, a / s);
  return equals(lhs, rhs);
}

}  // namespace cf

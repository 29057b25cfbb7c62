#include "crystalforge/unicrys.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace cf {

namespace {

Tuple slice(const Tuple& x, int off, int len) { return Tuple(x.begin() + off, x.begin() + off + len); }

Tuple concat(Tuple a, const Tuple& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

MatRF shifted(const MatRF& g, int offset, int count, int arity) {
  return substitute(g, variables(arity, offset, count));
}

RatFunc shifted(const RatFunc& f, int offset, int count, int arity) {
  if (f.isConstant()) return f;
  return substitute(f, variables(arity, offset, count));
}

std::map<int, RatFunc> phiOf(const GroupCtx& ctx, const MatRF& f) {
  std::map<int, RatFunc> out;
  for (int i : ctx.labels()) {
    RatFunc p = chiBarLower(ctx, i, f);
    if (!p.isZero()) out.emplace(i, p);
  }
  return out;
}

UNodePtr finish(const GroupCtx& ctx, UNode n) {
  n.gamma = n.f.diagonal();
  n.phi = phiOf(ctx, n.f);
  return std::make_shared<const UNode>(std::move(n));
}

RatFunc pushGen(const RatFunc& a, const RatFunc& phi, const RatFunc& alpha) {
  if (a.isZero()) return a;
  return a / ((RatFunc(1L) + a * phi) * alpha);
}

RatFunc nodePhi(const UNode& n, int i, const Tuple& x) {
  auto it = n.phi.find(i);
  return it == n.phi.end() ? RatFunc(0L) : atPoint(it->second, x);
}

cf::Torus nodeGamma(const UNode& n, const Tuple& x) {
  cf::Torus t;
  for (const auto& g : n.gamma) t.push_back(atPoint(g, x));
  return t;
}

std::pair<Tuple, RatFunc> actNode(const GroupCtx& ctx, const UNode& n, int i, const RatFunc& a, const Tuple& x) {
  switch (n.kind) {
    case UNode::Kind::OneDim: {
      Tuple y = x;
      if (n.index == i) y[0] = x[0] + a;
      return {y, pushGen(a, nodePhi(n, i, x), ctx.alpha(i, nodeGamma(n, x)))};
    }
    case UNode::Kind::Torus:
      return {x, a / ctx.alpha(i, nodeGamma(n, x))};
    case UNode::Kind::Product: {
      auto [xa, a1] = actNode(ctx, *n.a, i, a, slice(x, 0, n.a->m));
      auto [xb, a2] = actNode(ctx, *n.b, i, a1, slice(x, n.a->m, n.b->m));
      return {concat(xa, xb), a2};
    }
    case UNode::Kind::Dual: {
      RatFunc as = pushGen(a, nodePhi(n, i, x), ctx.alpha(i, nodeGamma(n, x)));
      return {actNode(ctx, *n.a, i, as, x).first, as};
    }
  }
  throw Error("bad node");
}

MatRF nodeF(const UNode& n, const Tuple& x) { return n.m == 0 ? n.f : substitute(n.f, x); }

std::pair<Tuple, MatRF> actNodeMatrix(const GroupCtx& ctx, const UNode& n, const MatRF& u, const Tuple& x) {
  switch (n.kind) {
    case UNode::Kind::OneDim: {
      Tuple y = x;
      y[0] = x[0] + ctx.chi(n.index, u);
      return {y, piPlus(u * nodeF(n, x))};
    }
    case UNode::Kind::Torus:
      return {x, piPlus(u * nodeF(n, x))};
    case UNode::Kind::Product: {
      auto [xa, u1] = actNodeMatrix(ctx, *n.a, u, slice(x, 0, n.a->m));
      auto [xb, u2] = actNodeMatrix(ctx, *n.b, u1, slice(x, n.a->m, n.b->m));
      return {concat(xa, xb), u2};
    }
    case UNode::Kind::Dual: {
      MatRF us = piPlus(u * nodeF(n, x));
      return {actNodeMatrix(ctx, *n.a, us, x).first, us};
    }
  }
  throw Error("bad node");
}

GeomCrystal inducedNode(const CtxPtr& ctx, const UNode& n) {
  GeomCrystal G;
  G.ctx = ctx;
  G.chartVars = defaultNames(n.m, "z");
  G.gamma = n.gamma;
  G.phi = n.phi;
  for (const auto& [i, p] : n.phi) G.support.push_back(i);
  int m = n.m;
  switch (n.kind) {
    case UNode::Kind::OneDim: {
      RatFunc z = RatFunc::var(0, 2), c = RatFunc::var(1, 2);
      G.eMap[n.index] = {c * z};
      break;
    }
    case UNode::Kind::Torus:
      break;
    case UNode::Kind::Product: {
      GeomCrystal A = inducedNode(ctx, *n.a), B = inducedNode(ctx, *n.b);
      int ma = n.a->m, mb = n.b->m, ar = m + 1;
      RatFunc c = RatFunc::var(m, ar);
      for (int i : G.support) {
        RatFunc px = A.phi.count(i) ? shifted(A.phi.at(i), 0, ma, ar) : RatFunc(0L);
        RatFunc py = B.phi.count(i) ? shifted(B.phi.at(i), ma, mb, ar) : RatFunc(0L);
        RatFunc ax = shifted(ctx->alpha(i, A.gamma), 0, ma, ar);
        RatFunc pa = px * ax;
        RatFunc s = pa + py;
        RatFunc c1 = (c * pa + py) / s;
        RatFunc c2 = s / (pa + py / c);
        Tuple comps;
        Tuple xa = variables(ar, 0, ma), xb = variables(ar, ma, mb);
        if (A.eMap.count(i)) {
          Tuple img = xa;
          img.push_back(c1);
          for (const auto& f : A.eMap.at(i)) comps.push_back(atPoint(f, img));
        } else {
          comps.insert(comps.end(), xa.begin(), xa.end());
        }
        if (B.eMap.count(i)) {
          Tuple img = xb;
          img.push_back(c2);
          for (const auto& f : B.eMap.at(i)) comps.push_back(atPoint(f, img));
        } else {
          comps.insert(comps.end(), xb.begin(), xb.end());
        }
        G.eMap[i] = comps;
      }
      break;
    }
    case UNode::Kind::Dual: {
      GeomCrystal D = dualize(inducedNode(ctx, *n.a));
      G.eMap = D.eMap;
      break;
    }
  }
  return G;
}

}  // namespace

RatFunc chiBarLower(const GroupCtx& ctx, int i, const MatRF& b) {
  int p = ctx.positions(i)[0];
  if (b(p + 1, p).isZero()) return RatFunc(0L);
  return b(p + 1, p) / b(p, p);
}

std::vector<int> UniCrystal::support() const {
  std::vector<int> s;
  if (!levi_) {
    for (const auto& [i, p] : node_->phi) s.push_back(i);
    return s;
  }
  for (int i : *levi_)
    if (!chiBarLower(*ctx_, i, *leviF_).isZero()) s.push_back(i);
  return s;
}

UniCrystal UniCrystal::withLevi(std::vector<int> J, MatRF f) const {
  UniCrystal r = *this;
  std::sort(J.begin(), J.end());
  r.levi_ = std::move(J);
  r.leviF_ = std::move(f);
  return r;
}

UniCrystal oneDim(const CtxPtr& ctx, int i, const std::string& var) {
  ctx->datum()->pos(i);
  UNode n{UNode::Kind::OneDim, i, nullptr, nullptr, 1, ctx->piOne(i, RatFunc::var(0, 1)), {}, {}};
  return UniCrystal(ctx, finish(*ctx, std::move(n)), {var});
}

UniCrystal torusFactor(const CtxPtr& ctx, const cf::Torus& t, const VarNames& vars) {
  UNode n{UNode::Kind::Torus, 0, nullptr, nullptr, int(vars.size()), MatRF::diag(t), {}, {}};
  return UniCrystal(ctx, finish(*ctx, std::move(n)), vars);
}

UniCrystal pointCrystal(const CtxPtr& ctx) {
  return torusFactor(ctx, cf::Torus(ctx->n(), RatFunc(1L)), {});
}

UniCrystal standardCell(const CtxPtr& ctx, const Word& word) {
  if (!isReduced(ctx->datum(), word)) throw NotReduced("word " + wordToString(word) + " is not reduced");
  if (word.empty()) return pointCrystal(ctx);
  UniCrystal X = oneDim(ctx, word[0], "z1");
  for (size_t k = 1; k < word.size(); ++k) X = product(X, oneDim(ctx, word[k], "z" + std::to_string(k + 1)));
  return X;
}

UniCrystal product(const UniCrystal& X, const UniCrystal& Y) {
  const auto& ctx = X.ctx();
  int ma = X.m(), mb = Y.m(), m = ma + mb;
  UNode n{UNode::Kind::Product, 0, X.node(), Y.node(), m, {}, {}, {}};
  n.f = shifted(X.node()->f, 0, ma, m) * shifted(Y.node()->f, ma, mb, m);
  VarNames vars = X.chartVars();
  std::set<std::string> used(vars.begin(), vars.end());
  for (auto v : Y.chartVars()) {
    while (used.count(v)) v += "'";
    used.insert(v);
    vars.push_back(v);
  }
  UniCrystal Z(ctx, finish(*ctx, std::move(n)), vars);
  if (X.levi() && Y.levi() && *X.levi() == *Y.levi())
    Z = Z.withLevi(*X.levi(), shifted(X.f(), 0, ma, m) * shifted(Y.f(), ma, mb, m));
  return Z;
}

UniCrystal dual(const UniCrystal& X) {
  const auto& ctx = X.ctx();
  UNode n{UNode::Kind::Dual, 0, X.node(), nullptr, X.m(), X.node()->f.inverse(), {}, {}};
  UniCrystal D(ctx, finish(*ctx, std::move(n)), X.chartVars());
  if (X.levi()) D = D.withLevi(*X.levi(), X.f().inverse());
  return D;
}

MatRF leviProjection(const GroupCtx& ctx, const std::vector<int>& J, const MatRF& b) {
  int n = ctx.n();
  std::vector<int> block(n);
  std::iota(block.begin(), block.end(), 0);
  std::function<int(int)> find = [&](int k) { return block[k] == k ? k : block[k] = find(block[k]); };
  for (int j : J)
    for (int p : ctx.positions(j)) block[find(p + 1)] = find(p);
  MatRF r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (find(i) == find(k)) r(i, k) = b(i, k);
  return r;
}

UniCrystal restrictLevi(const UniCrystal& X, const std::vector<int>& J) {
  for (int j : J) X.ctx()->datum()->pos(j);
  return X.withLevi(J, leviProjection(*X.ctx(), J, X.f()));
}

MatRF fAt(const UniCrystal& X, const Tuple& x) { return X.m() == 0 ? X.f() : substitute(X.f(), x); }

std::pair<Tuple, RatFunc> actU(const UniCrystal& X, int i, const RatFunc& a, const Tuple& x) {
  if (X.levi() && std::find(X.levi()->begin(), X.levi()->end(), i) == X.levi()->end())
    throw NotSupported("x_" + std::to_string(i) + " is not in U_L");
  X.ctx()->datum()->pos(i);
  return actNode(*X.ctx(), *X.node(), i, a, x);
}

std::pair<Tuple, MatRF> actUMatrix(const UniCrystal& X, const MatRF& u, const Tuple& x) {
  if (!u.isUnitUpper()) throw Error("actUMatrix: u must be unit upper triangular");
  return actNodeMatrix(*X.ctx(), *X.node(), u, x);
}

GeomCrystal induced(const UniCrystal& X, InduceMode mode) {
  const auto& ctx = X.ctx();
  GeomCrystal G;
  if (mode == InduceMode::Recursive) {
    G = inducedNode(ctx, *X.node());
  } else {
    G.ctx = ctx;
    G.gamma = X.node()->gamma;
    G.phi = X.node()->phi;
    for (const auto& [i, p] : G.phi) G.support.push_back(i);
    int m = X.m();
    Tuple x = variables(m + 1, 0, m);
    RatFunc c = RatFunc::var(m, m + 1);
    for (int i : G.support) {
      RatFunc a = (c - RatFunc(1L)) / atPoint(G.phi.at(i), x);
      G.eMap[i] = actNode(*ctx, *X.node(), i, a, x).first;
    }
  }
  G.chartVars = X.chartVars();
  if (X.levi()) {
    G.support = X.support();
    std::map<int, Tuple> e;
    std::map<int, RatFunc> phi;
    for (int i : G.support) {
      e[i] = G.eMap.at(i);
      phi[i] = chiBarLower(*ctx, i, X.f());
    }
    G.eMap = e;
    G.phi = phi;
    G.gamma = X.f().diagonal();
  }
  G.matrixForm = X.f();
  return G;
}

CheckResult diagonalize(const UniCrystal& X, const UniCrystal& Y, int i, const VerifyOptions& opt) {
  const auto& ctx = X.ctx();
  int mx = X.m(), my = Y.m(), ar = mx + my + 1;
  {
    RationalSampler rs(opt.seed ^ 0x5a5a5a5aULL);
    bool ok = false;
    for (int t = 0; t < 10 && !ok; ++t) {
      try {
        ctx->vMap(fAt(X, rs.point(mx)));
        ok = true;
      } catch (const NotInCell&) {
      } catch (const DivisionByZeroFunction&) {
      }
    }
    if (!ok) throw Degenerate("f_X misses the open cell B w0 B");
  }
  auto lhs = [&](const Tuple& p) {
    Tuple x = slice(p, 0, mx), y = slice(p, mx, my);
    auto [x1, a1] = actU(X, i, p[ar - 1], x);
    Tuple y1 = actU(Y, i, a1, y).first;
    MatRF v = ctx->vMap(fAt(X, x1));
    return concat(x1, actUMatrix(Y, v, y1).first);
  };
  auto rhs = [&](const Tuple& p) {
    Tuple x = slice(p, 0, mx), y = slice(p, mx, my);
    MatRF v = ctx->vMap(fAt(X, x));
    Tuple yF = actUMatrix(Y, v, y).first;
    Tuple x1 = actU(X, i, p[ar - 1], x).first;
    return concat(x1, actU(Y, i, p[ar - 1], yF).first);
  };
  return checkIdentity("diagonalization x_" + std::to_string(i), ar, lhs, rhs, opt);
}

MatRF uSimple(const GroupCtx& ctx, int i, const MatRF& b) {
  RatFunc al = ctx.alpha(i, b.diagonal());
  RatFunc ph = chiBarLower(ctx, i, b);
  if (ph.isZero()) throw NotSupported("phi_" + std::to_string(i) + " vanishes");
  return ctx.x(i, (RatFunc(1L) - al) / (ph * al));
}

MatRF uW(const GroupCtx& ctx, const Word& word, const MatRF& b, int splitAt) {
  if (!isReduced(ctx.datum(), word)) throw NotReduced("word " + wordToString(word) + " is not reduced");
  if (word.empty()) return MatRF::identity(ctx.n());
  if (word.size() == 1) return uSimple(ctx, word[0], b);
  int k = splitAt < 0 ? 1 : splitAt;
  if (k <= 0 || k >= int(word.size())) throw Error("uW: split point out of range");
  Word w1(word.begin(), word.begin() + k), w2(word.begin() + k, word.end());
  MatRF u2 = uW(ctx, w2, b);
  MatRF b2 = u2 * b * u2.inverse();
  return uW(ctx, w1, b2) * u2;
}

RatFunc UChar::operator()(const GroupCtx& ctx, const MatRF& u) const {
  RatFunc r(0L);
  const auto& L = ctx.labels();
  for (size_t k = 0; k < L.size(); ++k)
    if (coeff.at(k) != 0) r = r + RatFunc(coeff[k]) * ctx.chi(L[k], u);
  return r;
}

UChar UChar::basis(const GroupCtx& ctx, const std::vector<int>& labels) {
  UChar c;
  for (int l : ctx.labels())
    c.coeff.push_back(std::find(labels.begin(), labels.end(), l) != labels.end() ? Rational(1) : Rational(0));
  return c;
}

UChar UChar::leviPart(const GroupCtx& ctx, const std::vector<int>& J) const {
  UChar c = *this;
  const auto& L = ctx.labels();
  for (size_t k = 0; k < L.size(); ++k)
    if (std::find(J.begin(), J.end(), L[k]) != J.end()) c.coeff[k] = 0;
  return c;
}

RatFunc chiW(const GroupCtx& ctx, const UChar& chi, const WeylElt& w, const MatRF& g) {
  return chi(ctx, piPlus(ctx.wbar(w).inverse() * g));
}

RatFunc fChi(const GroupCtx& ctx, const UChar& chi, const UChar& chi2, const WeylElt& w, const MatRF& g) {
  return chiW(ctx, chi, w, g) + chiW(ctx, chi2, w.inverse(), ctx.iota(g));
}

namespace {
nlohmann::ordered_json nodeJson(const UNode& n) {
  nlohmann::ordered_json j;
  switch (n.kind) {
    case UNode::Kind::OneDim:
      j["oneDim"] = n.index;
      break;
    case UNode::Kind::Torus:
      j["torus"] = n.m;
      break;
    case UNode::Kind::Product:
      j["product"] = {nodeJson(*n.a), nodeJson(*n.b)};
      break;
    case UNode::Kind::Dual:
      j["dual"] = nodeJson(*n.a);
      break;
  }
  return j;
}
}  // namespace

std::string toJson(const UniCrystal& X) {
  nlohmann::ordered_json j;
  j["group"] = X.ctx()->name();
  j["chartVars"] = X.chartVars();
  j["factors"] = nodeJson(*X.node());
  if (X.levi()) j["levi"] = *X.levi();
  j["f"] = X.f().toStrings(X.chartVars());
  return j.dump(2);
}

}  // namespace cf

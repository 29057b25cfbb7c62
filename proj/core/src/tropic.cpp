#include "crystalforge/tropic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace cf {

namespace {

using PNode = PosExpr::Node;

}  // namespace

// ---------------------------------------------------------------- PosExpr

PosExpr PosExpr::var(int i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = i;
  return PosExpr(n);
}

PosExpr PosExpr::constant(const Rational& q) {
  if (sgn(q) <= 0) throw NotCertifiedPositive("constant " + toString(q) + " is not positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = q;
  return PosExpr(n);
}

PosExpr operator+(const PosExpr& x, const PosExpr& y) {
  auto n = std::make_shared<PNode>();
  n->kind = PosExpr::Kind::Add;
  n->a = x.n_;
  n->b = y.n_;
  return PosExpr(n);
}

PosExpr operator*(const PosExpr& x, const PosExpr& y) {
  auto n = std::make_shared<PNode>();
  n->kind = PosExpr::Kind::Mul;
  n->a = x.n_;
  n->b = y.n_;
  return PosExpr(n);
}

PosExpr operator/(const PosExpr& x, const PosExpr& y) {
  auto n = std::make_shared<PNode>();
  n->kind = PosExpr::Kind::Div;
  n->a = x.n_;
  n->b = y.n_;
  return PosExpr(n);
}

namespace {

PosExpr polyExpr(const ZPoly& p) {
  std::vector<PosExpr> terms;
  for (const auto& t : p.terms()) {
    std::optional<PosExpr> m;
    if (t.c != 1) m = PosExpr::constant(Rational(t.c));
    for (int v = 0; v < kMaxVars; ++v)
      for (unsigned k = 0; k < t.m.e[v]; ++k) m = m ? *m * PosExpr::var(v) : PosExpr::var(v);
    terms.push_back(m ? *m : PosExpr::constant(1));
  }
  PosExpr s = terms[0];
  for (size_t k = 1; k < terms.size(); ++k) s = s + terms[k];
  return s;
}

bool allNonNegative(const ZPoly& p) {
  for (const auto& t : p.terms())
    if (sgn(t.c) < 0) return false;
  return true;
}

bool allNonPositive(const ZPoly& p) {
  for (const auto& t : p.terms())
    if (sgn(t.c) > 0) return false;
  return true;
}

}  // namespace

PosExpr PosExpr::fromRatFunc(const RatFunc& f) {
  if (f.isZero()) throw NotCertifiedPositive("zero function");
  ZPoly num = f.num(), den = f.den();
  if (allNonPositive(num) && allNonPositive(den)) {
    num = -num;
    den = -den;
  }
  if (!allNonNegative(num) || !allNonNegative(den))
    throw NotCertifiedPositive("stored form has a negative coefficient");
  PosExpr n = polyExpr(num);
  if (den.isOne()) return n;
  return n / polyExpr(den);
}

int PosExpr::arity() const {
  std::unordered_map<const Node*, int> memo;
  std::function<int(const Node*)> go = [&](const Node* p) -> int {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    int r = 0;
    switch (p->kind) {
      case Kind::Var: r = p->index + 1; break;
      case Kind::Const: r = 0; break;
      default: r = std::max(go(p->a.get()), go(p->b.get()));
    }
    return memo[p] = r;
  };
  return go(n_.get());
}

RatFunc PosExpr::toRatFunc(int arity) const {
  std::unordered_map<const Node*, RatFunc> memo;
  std::function<RatFunc(const Node*)> go = [&](const Node* p) -> RatFunc {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    RatFunc r;
    switch (p->kind) {
      case Kind::Var: r = RatFunc::var(p->index, arity); break;
      case Kind::Const: r = RatFunc(p->value); break;
      case Kind::Add: r = go(p->a.get()) + go(p->b.get()); break;
      case Kind::Mul: r = go(p->a.get()) * go(p->b.get()); break;
      case Kind::Div: r = go(p->a.get()) / go(p->b.get()); break;
    }
    return memo[p] = r;
  };
  return go(n_.get()).withCertificate(true);
}

PosExpr PosExpr::compose(const std::vector<PosExpr>& images) const {
  std::unordered_map<const Node*, std::shared_ptr<const Node>> memo;
  std::function<std::shared_ptr<const Node>(const std::shared_ptr<const Node>&)> go =
      [&](const std::shared_ptr<const Node>& p) -> std::shared_ptr<const Node> {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    std::shared_ptr<const Node> r;
    switch (p->kind) {
      case Kind::Var:
        if (p->index >= int(images.size())) throw Error("compose: missing image");
        r = images[p->index].n_;
        break;
      case Kind::Const: r = p; break;
      default: {
        auto n = std::make_shared<Node>();
        n->kind = p->kind;
        n->a = go(p->a);
        n->b = go(p->b);
        r = n;
      }
    }
    return memo[p.get()] = r;
  };
  return PosExpr(go(n_));
}

PosExpr randomPosExpr(int arity, int depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> leaf(0, arity), op(0, 3), small(1, 9);
  if (depth <= 0) {
    int k = leaf(rng);
    if (k == arity) return PosExpr::constant(Rational(small(rng), small(rng)));
    return PosExpr::var(k);
  }
  int o = op(rng);
  if (o == 3) return randomPosExpr(arity, 0, rng);
  PosExpr a = randomPosExpr(arity, depth - 1, rng), b = randomPosExpr(arity, depth - 1, rng);
  switch (o) {
    case 0: return a + b;
    case 1: return a * b;
    default: return a / b;
  }
}

// ---------------------------------------------------------------- TropExpr

TropExpr TropExpr::lin(IVec coeffs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lin;
  n->lin = std::move(coeffs);
  return TropExpr(n);
}

TropExpr TropExpr::unit(int i, int arity) {
  IVec v(arity, 0);
  v.at(i) = 1;
  return lin(v);
}

int TropExpr::arity() const {
  const Node* p = n_.get();
  while (p->kind != Kind::Lin) p = p->kids.front().n_.get();
  return int(p->lin.size());
}

TropExpr TropExpr::min(std::vector<TropExpr> kids) {
  if (kids.empty()) throw Error("min of nothing");
  std::vector<TropExpr> flat;
  std::vector<IVec> seen;
  for (auto& k : kids) {
    const auto& src = k.kind() == Kind::Min ? k.kids() : std::vector<TropExpr>{k};
    for (const auto& c : src) {
      if (c.kind() == Kind::Lin) {
        if (std::find(seen.begin(), seen.end(), c.coeffs()) != seen.end()) continue;
        seen.push_back(c.coeffs());
      }
      flat.push_back(c);
    }
  }
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Min;
  n->kids = std::move(flat);
  return TropExpr(n);
}

TropExpr TropExpr::plus(std::vector<TropExpr> kids) {
  if (kids.empty()) throw Error("plus of nothing");
  std::vector<TropExpr> rest;
  std::optional<IVec> acc;
  for (auto& k : kids) {
    const auto& src = k.kind() == Kind::Plus ? k.kids() : std::vector<TropExpr>{k};
    for (const auto& c : src) {
      if (c.kind() != Kind::Lin) {
        rest.push_back(c);
        continue;
      }
      if (!acc) {
        acc = c.coeffs();
      } else {
        for (size_t t = 0; t < acc->size(); ++t) (*acc)[t] += c.coeffs()[t];
      }
    }
  }
  if (acc && (rest.empty() || std::any_of(acc->begin(), acc->end(), [](long v) { return v != 0; })))
    rest.insert(rest.begin(), lin(*acc));
  if (rest.size() == 1) return rest[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plus;
  n->kids = std::move(rest);
  return TropExpr(n);
}

TropExpr TropExpr::minus(const TropExpr& a, const TropExpr& b) {
  if (a.kind() == Kind::Lin && b.kind() == Kind::Lin) {
    IVec v = a.coeffs();
    for (size_t t = 0; t < v.size(); ++t) v[t] -= b.coeffs()[t];
    return lin(v);
  }
  if (b.kind() == Kind::Lin && std::all_of(b.coeffs().begin(), b.coeffs().end(), [](long v) { return v == 0; }))
    return a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Minus;
  n->kids = {a, b};
  return TropExpr(n);
}

TropExpr TropExpr::scaled(const TropExpr& t, long k) {
  if (t.kind() == Kind::Lin) {
    IVec v = t.coeffs();
    for (auto& x : v) x *= k;
    return lin(v);
  }
  if (k == 0) return zero(t.arity());
  std::vector<TropExpr> copies(size_t(std::labs(k)), t);
  TropExpr s = plus(copies);
  return k > 0 ? s : minus(zero(t.arity()), s);
}

long TropExpr::evaluate(const IVec& pt) const {
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::Lin: {
      long s = 0;
      for (size_t t = 0; t < n.lin.size(); ++t) s += n.lin[t] * pt[t];
      return s;
    }
    case Kind::Min: {
      long m = n.kids[0].evaluate(pt);
      for (size_t t = 1; t < n.kids.size(); ++t) m = std::min(m, n.kids[t].evaluate(pt));
      return m;
    }
    case Kind::Plus: {
      long s = 0;
      for (const auto& k : n.kids) s += k.evaluate(pt);
      return s;
    }
    case Kind::Minus:
      return n.kids[0].evaluate(pt) - n.kids[1].evaluate(pt);
  }
  return 0;
}

TropExpr TropExpr::substitute(const std::vector<TropExpr>& images) const {
  std::unordered_map<const Node*, TropExpr> memo;
  std::function<TropExpr(const TropExpr&)> go = [&](const TropExpr& t) -> TropExpr {
    auto it = memo.find(t.n_.get());
    if (it != memo.end()) return it->second;
    TropExpr r = t;
    switch (t.kind()) {
      case Kind::Lin: {
        if (t.coeffs().size() != images.size()) throw Error("substitute: arity mismatch");
        std::vector<TropExpr> parts;
        for (size_t k = 0; k < images.size(); ++k)
          if (t.coeffs()[k] != 0) parts.push_back(scaled(images[k], t.coeffs()[k]));
        r = parts.empty() ? zero(images.empty() ? 0 : images[0].arity()) : plus(parts);
        break;
      }
      case Kind::Min:
      case Kind::Plus: {
        std::vector<TropExpr> ks;
        for (const auto& k : t.kids()) ks.push_back(go(k));
        r = t.kind() == Kind::Min ? min(ks) : plus(ks);
        break;
      }
      case Kind::Minus:
        r = minus(go(t.kids()[0]), go(t.kids()[1]));
        break;
    }
    memo.emplace(t.n_.get(), r);
    return r;
  };
  return go(*this);
}

namespace {

std::string linString(const IVec& v, const VarNames& names) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    long a = std::labs(v[k]);
    std::string term = (a == 1 ? "" : std::to_string(a)) + names[k];
    if (s.empty())
      s = (v[k] < 0 ? "-" : "") + term;
    else
      s += (v[k] < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string TropExpr::str(const VarNames& names) const {
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::Lin:
      return linString(n.lin, names);
    case Kind::Min: {
      std::string s = "min(";
      for (size_t k = 0; k < n.kids.size(); ++k) s += (k ? ", " : "") + n.kids[k].str(names);
      return s + ")";
    }
    case Kind::Plus: {
      std::string s;
      for (size_t k = 0; k < n.kids.size(); ++k) s += (k ? " + " : "") + n.kids[k].str(names);
      return s;
    }
    case Kind::Minus: {
      std::string b = n.kids[1].str(names);
      bool wrap = n.kids[1].kind() == Kind::Plus ||
                  (n.kids[1].kind() == Kind::Lin && b.find_first_of("+-", 1) != std::string::npos);
      return n.kids[0].str(names) + " - " + (wrap ? "(" + b + ")" : b);
    }
  }
  return "";
}

// ---------------------------------------------------------------- PLMap and JSON

IVec PLMap::evaluate(const IVec& pt) const {
  if (int(pt.size()) != inDim()) throw Error("PLMap: wrong input dimension");
  IVec out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.evaluate(pt));
  return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json tropJson(const TropExpr& t) {
  ordered_json j;
  switch (t.kind()) {
    case TropExpr::Kind::Lin:
      j["lin"] = t.coeffs();
      break;
    case TropExpr::Kind::Min:
    case TropExpr::Kind::Plus: {
      ordered_json arr = ordered_json::array();
      for (const auto& k : t.kids()) arr.push_back(tropJson(k));
      j[t.kind() == TropExpr::Kind::Min ? "min" : "plus"] = arr;
      break;
    }
    case TropExpr::Kind::Minus:
      j["minus"] = ordered_json::array({tropJson(t.kids()[0]), tropJson(t.kids()[1])});
      break;
  }
  return j;
}

TropExpr tropFromJson(const ordered_json& j, int arity) {
  if (!j.is_object() || j.size() != 1) throw ParseError("PLMap: expected a single-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "lin") {
    if (!val.is_array() || int(val.size()) != arity) throw ParseError("PLMap: lin arity mismatch");
    IVec v;
    for (const auto& x : val) {
      if (!x.is_number_integer()) throw ParseError("PLMap: lin coefficients must be integers");
      v.push_back(x.get<long>());
    }
    return TropExpr::lin(v);
  }
  if (!val.is_array() || val.empty()) throw ParseError("PLMap: '" + key + "' needs a nonempty array");
  std::vector<TropExpr> kids;
  for (const auto& x : val) kids.push_back(tropFromJson(x, arity));
  if (key == "min") return TropExpr::min(kids);
  if (key == "plus") return TropExpr::plus(kids);
  if (key == "minus") {
    if (kids.size() != 2) throw ParseError("PLMap: minus takes two operands");
    return TropExpr::minus(kids[0], kids[1]);
  }
  throw ParseError("PLMap: unknown node '" + key + "'");
}

ordered_json plJson(const PLMap& f) {
  ordered_json j;
  j["vars"] = f.vars;
  ordered_json comps = ordered_json::array();
  for (const auto& c : f.components) comps.push_back(tropJson(c));
  j["components"] = comps;
  return j;
}

}  // namespace

std::string toJson(const PLMap& f) { return plJson(f).dump(); }

PLMap plMapFromJson(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("PLMap: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vars") || !j.contains("components") || !j["vars"].is_array() ||
      !j["components"].is_array())
    throw ParseError("PLMap: expected {\"vars\": [...], \"components\": [...]}");
  PLMap f;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw ParseError("PLMap: variable names must be strings");
    f.vars.push_back(v.get<std::string>());
  }
  for (const auto& c : j["components"]) f.components.push_back(tropFromJson(c, f.inDim()));
  return f;
}

// ---------------------------------------------------------------- tropicalization

TropExpr tropicalize(const PosExpr& e, int arity) {
  using K = PosExpr::Kind;
  std::unordered_map<const PNode*, TropExpr> memo;
  std::function<TropExpr(const PNode*)> go = [&](const PNode* p) -> TropExpr {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    TropExpr r = TropExpr::zero(arity);
    switch (p->kind) {
      case K::Var: r = TropExpr::unit(p->index, arity); break;
      case K::Const: break;
      case K::Add: r = TropExpr::min({go(p->a.get()), go(p->b.get())}); break;
      case K::Mul: r = TropExpr::plus({go(p->a.get()), go(p->b.get())}); break;
      case K::Div: r = TropExpr::minus(go(p->a.get()), go(p->b.get())); break;
    }
    memo.emplace(p, r);
    return r;
  };
  return go(e.node());
}

TropExpr tropicalize(const RatFunc& f) { return tropicalize(PosExpr::fromRatFunc(f), std::max(1, f.arity())); }

namespace {

Tuple loopImages(const IVec& lambda, uint64_t seed) {
  RationalSampler s(seed);
  RatFunc c = RatFunc::var(0, 1);
  Tuple img;
  for (long l : lambda) img.push_back(RatFunc(s.next()) * c.pow(l));
  return img;
}

long valuation(const RatFunc& f) {
  if (f.isZero()) throw ZeroFunction("function vanishes on the loop");
  return lowestDegree(f, 0);
}

}  // namespace

long degOracle(const PosExpr& e, const IVec& lambda, uint64_t seed) {
  using K = PosExpr::Kind;
  Tuple img = loopImages(lambda, seed);
  std::unordered_map<const PNode*, RatFunc> memo;
  std::function<RatFunc(const PNode*)> go = [&](const PNode* p) -> RatFunc {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    RatFunc r;
    switch (p->kind) {
      case K::Var:
        if (p->index >= int(img.size())) throw Error("degOracle: lambda too short");
        r = img[p->index];
        break;
      case K::Const: r = RatFunc(p->value); break;
      case K::Add: r = go(p->a.get()) + go(p->b.get()); break;
      case K::Mul: r = go(p->a.get()) * go(p->b.get()); break;
      case K::Div: r = go(p->a.get()) / go(p->b.get()); break;
    }
    return memo[p] = r;
  };
  return valuation(go(e.node()));
}

long degOracle(const RatFunc& f, const IVec& lambda, uint64_t seed) {
  Tuple img = loopImages(lambda, seed);
  while (int(img.size()) < f.arity()) img.push_back(RatFunc(1L));
  return valuation(substitute(f, img));
}

namespace {

std::string vecStr(const IVec& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

void note(FunctorialityReport& r, const std::string& s) {
  ++r.mismatches;
  if (r.examples.size() < 5) r.examples.push_back(s);
}

}  // namespace

FunctorialityReport checkFunctoriality(const std::vector<PosExpr>& f, const std::vector<PosExpr>& g, int arity,
                                       const std::vector<IVec>& samples, uint64_t seed) {
  int k = int(f.size());
  std::vector<TropExpr> tf, tg, tgf;
  for (const auto& e : f) tf.push_back(tropicalize(e, arity));
  for (const auto& e : g) tg.push_back(tropicalize(e, k));
  std::vector<PosExpr> gf;
  for (const auto& e : g) gf.push_back(e.compose(f));
  for (const auto& e : gf) tgf.push_back(tropicalize(e, arity));

  FunctorialityReport r;
  for (const auto& lam : samples) {
    ++r.samples;
    IVec mu, muOracle;
    for (size_t t = 0; t < f.size(); ++t) {
      mu.push_back(tf[t].evaluate(lam));
      muOracle.push_back(degOracle(f[t], lam, seed));
    }
    for (size_t t = 0; t < g.size(); ++t) {
      long a = tgf[t].evaluate(lam), b = degOracle(gf[t], lam, seed);
      long c = tg[t].evaluate(mu), d = degOracle(g[t], muOracle, seed);
      if (a != b || a != c || a != d)
        note(r, "lambda=" + vecStr(lam) + " component " + std::to_string(t) + ": trop(g o f)=" + std::to_string(a) +
                    " oracle(g o f)=" + std::to_string(b) + " trop(g)(trop f)=" + std::to_string(c) +
                    " oracle(g)(oracle f)=" + std::to_string(d));
    }
  }
  return r;
}

FunctorialityReport checkFunctoriality(const Tuple& f, const Tuple& g, const std::vector<IVec>& samples,
                                       uint64_t seed) {
  Tuple gf;
  for (const auto& e : g) gf.push_back(substitute(e, f));
  FunctorialityReport r;
  for (const auto& lam : samples) {
    ++r.samples;
    try {
      IVec mu;
      for (const auto& e : f) mu.push_back(degOracle(e, lam, seed));
      for (size_t t = 0; t < g.size(); ++t) {
        long a = degOracle(gf[t], lam, seed), b = degOracle(g[t], mu, seed);
        if (a != b)
          note(r, "lambda=" + vecStr(lam) + " component " + std::to_string(t) + ": deg(g o f)=" + std::to_string(a) +
                      " deg(g)(deg f)=" + std::to_string(b));
      }
    } catch (const ZeroFunction&) {
      note(r, "lambda=" + vecStr(lam) + ": zero function on the loop");
    }
  }
  return r;
}

// ---------------------------------------------------------------- combinatorial crystals

IVec CombCrystal::applyE(int i, long n, const IVec& z) const {
  auto it = e.find(i);
  if (it == e.end()) throw NotSupported("e_" + std::to_string(i) + " is not defined");
  IVec pt = z;
  pt.push_back(n);
  IVec out;
  out.reserve(z.size());
  for (const auto& c : it->second) out.push_back(c.evaluate(pt));
  return out;
}

IVec CombCrystal::gammaAt(const IVec& z) const {
  IVec out;
  out.reserve(gamma.size());
  for (const auto& c : gamma) out.push_back(c.evaluate(z));
  return out;
}

IVec CombCrystal::reflect(int i, const IVec& z) const { return applyE(i, -dot(gammaAt(z), datum->root(i)), z); }

PLMap CombCrystal::eMap(int i) const {
  PLMap f;
  f.vars = vars;
  f.vars.push_back("n");
  f.components = e.at(i);
  return f;
}

PLMap CombCrystal::gammaMap() const { return PLMap{vars, gamma}; }

VarNames tropNames(int m) {
  if (m == 1) return {"ζ"};
  VarNames v;
  for (int k = 1; k <= m; ++k) v.push_back("ζ" + std::to_string(k));
  return v;
}

CombCrystal tropCrystal(const GeomCrystal& X) {
  CombCrystal C;
  C.datum = X.ctx->datum();
  int m = X.m();
  C.vars = tropNames(m);
  C.support = X.support;
  auto trop = [](const RatFunc& f, int arity) { return tropicalize(PosExpr::fromRatFunc(f), arity); };
  for (const auto& g : X.gamma) C.gamma.push_back(trop(g, m));
  for (int i : X.support) {
    std::vector<TropExpr> comps;
    for (const auto& f : X.eMap.at(i)) comps.push_back(trop(f, m + 1));
    C.e[i] = comps;
    auto p = X.phi.find(i);
    if (p == X.phi.end()) continue;
    try {
      C.phi.emplace(i, trop(p->second, m));
    } catch (const NotCertifiedPositive&) {
      // phi is optional; a non-positive phi is simply not carried over
    }
  }
  return C;
}

std::vector<IVec> boxPoints(int m, int B) {
  std::vector<IVec> out;
  if (B < 0) return out;
  IVec p(m, -B);
  while (true) {
    out.push_back(p);
    int k = m - 1;
    while (k >= 0 && p[k] == B) p[k--] = -B;
    if (k < 0) break;
    ++p[k];
  }
  return out;
}

namespace {

void violation(BoxReport& r, const std::string& s) {
  ++r.violations;
  if (r.examples.size() < 10) r.examples.push_back(s);
}

// Splits the points into contiguous chunks, one per thread, and merges the
// partial reports in chunk order so the result does not depend on scheduling.
BoxReport overBox(const std::vector<IVec>& pts, const std::function<void(const IVec&, BoxReport&)>& visit) {
  size_t threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<size_t>(1, pts.size() / 256));
  std::vector<BoxReport> parts(threads);
  auto work = [&](size_t t) {
    size_t lo = pts.size() * t / threads, hi = pts.size() * (t + 1) / threads;
    for (size_t k = lo; k < hi; ++k) visit(pts[k], parts[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  BoxReport r;
  for (auto& p : parts) {
    r.points += p.points;
    r.checks += p.checks;
    r.violations += p.violations;
    for (auto& e : p.examples)
      if (r.examples.size() < 10) r.examples.push_back(std::move(e));
  }
  return r;
}

}  // namespace

BoxReport verifyWCrystalBox(const CombCrystal& C, int B) {
  const auto& d = *C.datum;
  return overBox(boxPoints(C.m(), B), [&](const IVec& z, BoxReport& r) {
    ++r.points;
    IVec g = C.gammaAt(z);
    for (int i : C.support) {
      std::string at = " at " + vecStr(z) + " (i=" + std::to_string(i) + ")";
      std::vector<IVec> steps;
      for (long n = -2L * B; n <= 2L * B; ++n) steps.push_back(C.applyE(i, n, z));
      auto step = [&](long n) -> const IVec& { return steps[size_t(n + 2L * B)]; };
      ++r.checks;
      if (step(0) != z) violation(r, "e^0 is not the identity" + at);
      for (long n = -B; n <= B; ++n) {
        ++r.checks;
        IVec gn = C.gammaAt(step(n)), expect = g;
        for (size_t k = 0; k < expect.size(); ++k) expect[k] += n * d.coroot(i)[k];
        if (gn != expect) violation(r, "gamma compatibility fails for n=" + std::to_string(n) + at);
      }
      for (long b = -B; b <= B; ++b)
        for (long a = -B; a <= B; ++a) {
          ++r.checks;
          if (C.applyE(i, a, step(b)) != step(a + b))
            violation(r, "action law fails for a=" + std::to_string(a) + ", b=" + std::to_string(b) + at);
        }
      ++r.checks;
      if (C.reflect(i, C.reflect(i, z)) != z) violation(r, "s_i is not an involution" + at);
    }
    for (size_t p = 0; p < C.support.size(); ++p)
      for (size_t q = p + 1; q < C.support.size(); ++q) {
        int i = C.support[p], j = C.support[q];
        int mij = d.braidOrder(i, j);
        IVec u = z, v = z;
        for (int k = 0; k < mij; ++k) {
          u = C.reflect(k % 2 ? j : i, u);
          v = C.reflect(k % 2 ? i : j, v);
        }
        ++r.checks;
        if (u != v)
          violation(r, "braid relation fails for (" + std::to_string(i) + "," + std::to_string(j) + ") at " +
                           vecStr(z));
      }
  });
}

CombCrystal elementaryComb(const DatumPtr& d, int i) {
  CombCrystal C;
  C.datum = d;
  C.vars = tropNames(1);
  C.support = {i};
  for (long a : d->coroot(i)) C.gamma.push_back(TropExpr::lin({a}));
  C.e[i] = {TropExpr::lin({1, 1})};
  C.phi.emplace(i, TropExpr::lin({-1}));
  return C;
}

CombCrystal latticeComb(const DatumPtr& d) {
  CombCrystal C;
  C.datum = d;
  int n = d->n;
  C.vars = tropNames(n);
  C.support = d->labels;
  for (int k = 0; k < n; ++k) C.gamma.push_back(TropExpr::unit(k, n));
  for (int i : d->labels) {
    std::vector<TropExpr> comps;
    for (int k = 0; k < n; ++k) {
      IVec v(n + 1, 0);
      v[k] = 1;
      v[n] = d->coroot(i)[k];
      comps.push_back(TropExpr::lin(v));
    }
    C.e[i] = comps;
  }
  return C;
}

namespace {

// Reinterpret an expression on m variables inside an ambient space of `arity`
// variables starting at `offset`.
TropExpr embed(const TropExpr& t, int offset, int arity) {
  std::vector<TropExpr> img;
  for (int k = 0; k < t.arity(); ++k) img.push_back(TropExpr::unit(offset + k, arity));
  return t.substitute(img);
}

}  // namespace

CombCrystal productRule(const CombCrystal& X, const CombCrystal& Y) {
  if (X.datum != Y.datum && X.datum->name != Y.datum->name) throw Error("productRule: different groups");
  CombCrystal P;
  P.datum = X.datum;
  int mx = X.m(), my = Y.m(), m = mx + my, ar = m + 1;
  P.vars = tropNames(m);
  std::set_union(X.support.begin(), X.support.end(), Y.support.begin(), Y.support.end(),
                 std::back_inserter(P.support));
  for (size_t k = 0; k < X.gamma.size(); ++k)
    P.gamma.push_back(TropExpr::plus({embed(X.gamma[k], 0, m), embed(Y.gamma[k], mx, m)}));

  // Geometric tensor rule in the symbols c, P = phi_x, Q = alpha_i(gamma_x), R = phi_y:
  //   c1 = (cPQ + R)/(PQ + R), c2 = (PQ + R)/(PQ + R/c), phi = P + R/Q.
  PosExpr c = PosExpr::var(0), Pp = PosExpr::var(1), Q = PosExpr::var(2), R = PosExpr::var(3);
  TropExpr c1 = tropicalize((c * Pp * Q + R) / (Pp * Q + R), 4);
  TropExpr c2 = tropicalize((Pp * Q + R) / (Pp * Q + R / c), 4);
  TropExpr phiRule = tropicalize(Pp + R / Q, 4);

  for (int i : P.support) {
    bool hx = X.e.count(i), hy = Y.e.count(i);
    TropExpr n = TropExpr::unit(m, ar);
    TropExpr n1 = n, n2 = TropExpr::zero(ar);
    if (hx && hy) {
      if (!X.phi.count(i) || !Y.phi.count(i)) throw NotSupported("productRule needs phi on both factors");
      std::vector<TropExpr> aGamma;
      for (const auto& g : X.gamma) aGamma.push_back(embed(g, 0, ar));
      TropExpr A = TropExpr::lin(X.datum->root(i)).substitute(aGamma);
      std::vector<TropExpr> sym{n, embed(X.phi.at(i), 0, ar), A, embed(Y.phi.at(i), mx, ar)};
      n1 = c1.substitute(sym);
      n2 = c2.substitute(sym);
      std::vector<TropExpr> symm{TropExpr::zero(m), embed(X.phi.at(i), 0, m),
                                 TropExpr::lin(X.datum->root(i)).substitute([&] {
                                   std::vector<TropExpr> g;
                                   for (const auto& t : X.gamma) g.push_back(embed(t, 0, m));
                                   return g;
                                 }()),
                                 embed(Y.phi.at(i), mx, m)};
      P.phi.emplace(i, phiRule.substitute(symm));
    } else if (hy) {
      n1 = TropExpr::zero(ar);
      n2 = n;
      if (Y.phi.count(i)) P.phi.emplace(i, embed(Y.phi.at(i), mx, m));
    } else if (X.phi.count(i)) {
      P.phi.emplace(i, embed(X.phi.at(i), 0, m));
    }
    std::vector<TropExpr> comps;
    std::vector<TropExpr> xi, yi;
    for (int k = 0; k < mx; ++k) xi.push_back(TropExpr::unit(k, ar));
    for (int k = 0; k < my; ++k) yi.push_back(TropExpr::unit(mx + k, ar));
    if (hx) {
      auto img = xi;
      img.push_back(n1);
      for (const auto& t : X.e.at(i)) comps.push_back(t.substitute(img));
    } else {
      comps.insert(comps.end(), xi.begin(), xi.end());
    }
    if (hy) {
      auto img = yi;
      img.push_back(n2);
      for (const auto& t : Y.e.at(i)) comps.push_back(t.substitute(img));
    } else {
      comps.insert(comps.end(), yi.begin(), yi.end());
    }
    P.e[i] = comps;
  }
  return P;
}

CombCrystal dualComb(const CombCrystal& C) {
  CombCrystal D = C;
  int m = C.m();
  D.gamma.clear();
  for (const auto& g : C.gamma) D.gamma.push_back(TropExpr::scaled(g, -1));
  std::vector<TropExpr> img;
  for (int k = 0; k < m; ++k) img.push_back(TropExpr::unit(k, m + 1));
  img.push_back(TropExpr::lin([&] {
    IVec v(m + 1, 0);
    v[m] = -1;
    return v;
  }()));
  for (auto& [i, comps] : D.e)
    for (auto& t : comps) t = t.substitute(img);
  // The Kashiwara functions of the dual are not derived here.
  D.phi.clear();
  return D;
}

BoxReport compareOnBox(const CombCrystal& a, const CombCrystal& b, int B) {
  BoxReport r;
  if (a.m() != b.m() || a.support != b.support) {
    violation(r, "different dimension or support");
    return r;
  }
  return overBox(boxPoints(a.m(), B), [&](const IVec& z, BoxReport& r) {
    ++r.points;
    ++r.checks;
    if (a.gammaAt(z) != b.gammaAt(z)) violation(r, "gamma differs at " + vecStr(z));
    for (int i : a.support)
      for (long n = -B; n <= B; ++n) {
        ++r.checks;
        if (a.applyE(i, n, z) != b.applyE(i, n, z))
          violation(r, "e_" + std::to_string(i) + "^" + std::to_string(n) + " differs at " + vecStr(z));
      }
  });
}

std::string crystalGraphDOT(const CombCrystal& C, int B) {
  std::ostringstream os;
  os << "digraph crystal {\n";
  auto pts = boxPoints(C.m(), B);
  auto id = [](const IVec& p) { return "\"" + vecStr(p) + "\""; };
  auto inBox = [&](const IVec& p) {
    return std::all_of(p.begin(), p.end(), [&](long v) { return v >= -B && v <= B; });
  };
  for (const auto& p : pts) os << "  " << id(p) << " [label=\"" << vecStr(C.gammaAt(p)) << "\"];\n";
  for (const auto& p : pts)
    for (int i : C.support) {
      IVec q = C.applyE(i, 1, p);
      if (inBox(q)) os << "  " << id(p) << " -> " << id(q) << " [label=\"" << i << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string toJson(const CombCrystal& C) {
  ordered_json j;
  j["group"] = C.datum->name;
  j["vars"] = C.vars;
  j["support"] = C.support;
  j["gamma"] = plJson(C.gammaMap());
  ordered_json e = ordered_json::object(), pretty = ordered_json::object();
  VarNames en = C.vars;
  en.push_back("n");
  for (const auto& [i, comps] : C.e) {
    e[std::to_string(i)] = plJson(C.eMap(i));
    ordered_json ps = ordered_json::array();
    for (const auto& t : comps) ps.push_back(t.str(en));
    pretty[std::to_string(i)] = ps;
  }
  j["e"] = e;
  j["e_pretty"] = pretty;
  ordered_json ph = ordered_json::object();
  for (const auto& [i, t] : C.phi) ph[std::to_string(i)] = t.str(C.vars);
  j["phi"] = ph;
  return j.dump(2);
}

}  // namespace cf

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "crystalforge/suites.hpp"
#include "crystalforge/tropic.hpp"
#include "crystalforge/unicrys.hpp"

using namespace cf;

namespace {

using Checks = std::vector<CheckResult>;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void all(const Checks& cs, const std::string& where) {
    for (const auto& c : cs) require(c.pass, where + ": " + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]"));
  }
  void allInMode(const Checks& cs, const std::string& where, Mode m) {
    all(cs, where);
    for (const auto& c : cs) require(c.mode == m, where + ": " + c.name + " ran in " + modeName(c.mode));
  }
};

const CheckResult* findCheck(const Checks& cs, const std::string& prefix) {
  for (const auto& c : cs)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

SuiteOptions exact() { return SuiteOptions{}; }

SuiteOptions sampled(int points = 20) {
  SuiteOptions o;
  o.verify.mode = Mode::Sampled;
  o.verify.points = points;
  return o;
}

// ------------------------------------------------------------------ criteria

Outcome critCommutation() {
  Outcome o;
  for (const char* g : {"SL2", "GL3", "GL4", "C2folded"}) o.all(commutationChecks(g), g);
  return o;
}

Outcome critVerma() {
  Outcome o;
  Checks gl4 = vermaChecks("GL4", exact()), gl3 = vermaChecks("GL3", exact());
  const CheckResult* a1 = findCheck(gl4, "verma A1A1 (1,3)");
  o.require(a1 && a1->pass && a1->mode == Mode::Exact, "A1xA1 (1,3) on GL4, exact");
  const CheckResult* a2 = findCheck(gl3, "verma A2 (1,2)");
  o.require(a2 && a2->pass && a2->mode == Mode::Exact, "A2 (1,2) on GL3, exact");
  SuiteOptions b2 = exact();
  b2.verify.budget = 2000000;
  Checks c2 = vermaChecks("C2folded", b2);
  const CheckResult* b = findCheck(c2, "verma B2");
  o.require(b && b->pass, "B2 on folded C2");
  if (b) {
    o.require(b->mode == Mode::Exact || b->points == 20, "B2 exact or 20 sampled points");
    o.notes.push_back("B2 ran " + modeName(b->mode));
  }
  SuiteOptions bad = exact();
  bad.corrupt = true;
  Checks broken = vermaChecks("GL3", bad);
  bool caught = false;
  for (const auto& c : broken) caught = caught || !c.pass;
  o.require(caught, "corrupted e-map is rejected");
  return o;
}

Outcome critWAction() {
  Outcome o;
  o.allInMode(wActionChecks("GL3", exact()), "GL3", Mode::Exact);
  return o;
}

Outcome critTrivialization() {
  Outcome o;
  o.allInMode(trivializationChecks("SL3", exact()), "SL3", Mode::Exact);
  Checks sl4 = trivializationChecks("SL4", sampled(), {Mode::Exact, Mode::Exact, Mode::Sampled});
  o.all(sl4, "SL4");
  for (int j = 1; j <= 3; ++j) {
    const CheckResult* c = findCheck(sl4, "chain relation j=" + std::to_string(j));
    Mode want = j <= 2 ? Mode::Exact : Mode::Sampled;
    o.require(c && c->mode == want, "chain relation j=" + std::to_string(j) + " in mode " + modeName(want));
  }
  for (const auto& c : sl4)
    if (c.mode == Mode::Sampled) o.require(c.points == 20, "SL4 " + c.name + " used 20 points");
  o.require(findCheck(sl4, "negative control: naive map") != nullptr, "naive map control present");
  return o;
}

Outcome critProduct() {
  Outcome o;
  o.allInMode(productChecks("GL3", exact()), "GL3", Mode::Exact);
  return o;
}

Outcome critDuality() {
  Outcome o;
  o.allInMode(dualityChecks("GL3", exact()), "GL3", Mode::Exact);
  return o;
}

Outcome critDiagonalization() {
  Outcome o;
  o.allInMode(diagonalizationChecks("GL2", exact()), "GL2", Mode::Exact);
  Checks sl2 = diagonalizationChecks("SL2", exact());
  o.all(sl2, "SL2");
  o.require(findCheck(sl2, "vMap closed form on SL2") != nullptr, "SL2 closed form present");
  Checks gl3 = diagonalizationChecks("GL3", sampled());
  o.all(gl3, "GL3");
  for (const auto& c : gl3) o.require(c.mode == Mode::Exact || c.points == 20, "GL3 " + c.name + " used 20 points");
  return o;
}

Outcome critUw() {
  Outcome o;
  Checks cs = uwChecks("GL3", exact());
  o.allInMode(cs, "GL3", Mode::Exact);
  int conj = 0;
  for (const auto& c : cs) conj += c.name.rfind("u_w b u_w^-1", 0) == 0;
  o.require(conj == 5, "conjugation identity for all 5 nontrivial w in S3");
  return o;
}

Outcome critInvariants() {
  Outcome o;
  o.allInMode(etaCharacterChecks("SL2", exact()), "SL2", Mode::Exact);
  o.allInMode(etaCharacterChecks("GL3", exact()), "GL3", Mode::Exact);
  Checks levi = leviInvarianceChecks("GL3", exact());
  o.require(!levi.empty(), "W_J checks present");
  o.allInMode(levi, "GL3 J={2}", Mode::Exact);
  Checks f = fInvarianceChecks("GL3", sampled());
  o.require(!f.empty(), "f invariance checks present");
  o.all(f, "GL3 f invariance");
  return o;
}

Outcome critTropicalization() {
  Outcome o;
  SuiteOptions b5 = exact();
  b5.box = 5;
  Checks sl2 = tropChecks("SL2", b5);
  o.all(sl2, "SL2");
  const CheckResult* zeta = findCheck(sl2, "e_1 = zeta + n");
  o.require(zeta && zeta->detail == "ζ + n", "SL2 cell gives zeta + n");
  const CheckResult* oracle = findCheck(sl2, "tropicalize = degOracle");
  o.require(oracle && oracle->points >= 500, "at least 500 oracle pairs");
  o.require(findCheck(sl2, "deg(g o f)") != nullptr, "functoriality on positive samples");
  o.require(findCheck(sl2, "negative control: (c-1, c+1)") != nullptr, "(c-1, c+1) counterexample");
  Checks gl3 = tropChecks("GL3", b5);
  o.all(gl3, "GL3");
  const CheckResult* box = findCheck(gl3, "free W-crystal on box B=5");
  o.require(box && box->points == 1331, "GL3 (1,2,1) box has 1331 points");
  o.require(findCheck(gl3, "productRule = tropCrystal of the product on box B=5") != nullptr, "productRule on B=5");
  if (oracle) o.notes.push_back(oracle->detail);
  if (box) o.notes.push_back(box->detail);
  return o;
}

Outcome critWeyl() {
  Outcome o;
  Checks gl4 = weylChecks("GL4");
  o.all(gl4, "GL4");
  const CheckResult* dem = findCheck(gl4, "demazure associativity (exhaustive)");
  o.require(dem != nullptr, "exhaustive Demazure associativity on S4");
  o.require(findCheck(gl4, "projectJ is a star homomorphism (exhaustive)") != nullptr, "projectJ for all J on S4");
  o.all(weylChecks("GL3"), "GL3");
  Checks d4 = weylChecks("D4");
  o.all(d4, "D4");
  o.require(findCheck(d4, "D4 example") != nullptr, "D4 example present");
  // (m,n) = (2,3) lives in GL5, outside the CLI group list.
  auto d = RootDatum::GL(5);
  std::vector<int> J{1, 3, 4};
  WeylElt w = WeylElt::fromWord(d, wmnWord(2, 3));
  WeylElt sigma = projectJ(w, J).inverse() * w;
  o.require(w == wLevi(d, J, d->labels), "w_{2,3} = w_{L,G} in GL5");
  o.require(latticeTw(sigma).rank() == 2, "rank T_sigma = 2 for (2,3)");
  o.require(isSpecial(w, J).special, "w_{2,3} special");
  return o;
}

MatRF genericLower3(int base, int arity, bool unit) {
  MatRF m = MatRF::identity(3);
  int v = base;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c <= r; ++c) {
      if (r == c && unit) continue;
      m(r, c) = RatFunc::var(v++, arity);
    }
  return m;
}

Outcome critGaussLayer() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  int done = 0, bad = 0;
  while (done < 100) {
    MatRF m(4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = RatFunc(Rational(num(rng), den(rng)));
    GaussTriple t;
    try {
      t = gauss(m);
    } catch (const NotInBigCell&) {
      continue;
    }
    ++done;
    if (!(t.uMinus.isUnitLower() && t.uPlus.isUnitUpper() && t.t.isDiagonal() && equals(t.uMinus * t.t * t.uPlus, m)))
      ++bad;
  }
  o.require(bad == 0, "LDU round trip on 100 random 4x4 matrices");

  auto G3 = GroupCtx::GL(3);
  const int A = 16;
  RatFunc a = RatFunc::var(0, A);
  MatRF um = genericLower3(1, A, true);
  Torus t{RatFunc::var(4, A), RatFunc::var(5, A), RatFunc::var(6, A)}, tinv;
  for (auto& e : t) tinv.push_back(e.inv());
  for (int i : {1, 2}) {
    MatRF lhs = piPlus(G3->x(i, a) * um * MatRF::diag(t));
    RatFunc arg = (a.inv() + G3->chiMinus(i, um)).inv() * G3->alpha(i, tinv);
    o.require(equals(lhs, G3->x(i, arg)), "pi(x_i(a) u t) closed form, i=" + std::to_string(i));
  }
  MatRF bm = genericLower3(1, A, false), bp = genericLower3(7, A, false);
  MatRF u = MatRF::identity(3);
  u(0, 1) = RatFunc::var(13, A);
  u(0, 2) = RatFunc::var(14, A);
  u(1, 2) = RatFunc::var(15, A);
  o.require(equals(piPlus(u * bm * bp), piPlus(piPlus(u * bm) * bp)), "pi(u b b') = pi(pi(u b) b'), generic u");
  for (int i : {1, 2}) {
    MatRF x = G3->x(i, a);
    o.require(equals(piPlus(x * bm * bp), piPlus(piPlus(x * bm) * bp)),
              "pi(x_i(a) b b') = pi(pi(x_i(a) b) b'), i=" + std::to_string(i));
  }

  MatRF g(3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = RatFunc::var(3 * r + c, 9);
  RatFunc D1 = minor(g, {1}, {1}), D1p = minor(g, {2}, {1}), D1pp = minor(g, {3}, {1});
  RatFunc D2 = minor(g, {1, 2}, {1, 2}), D2p = minor(g, {1, 3}, {1, 2}), D2pp = minor(g, {2, 3}, {1, 2});
  o.require(equals(D1p * D2p, D1 * D2pp + D1pp * D2), "GL3 minor identity");
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "commutation identity in SL2, GL3, GL4, folded C2 (exact)", 5, critCommutation},
      {2, "Verma relations A1xA1, A2, B2 and corrupted-map control", 120, critVerma},
      {3, "W-action on GL3: involutions, braid, gamma-equivariance (exact)", 30, critWAction},
      {4, "trivialization SL3 exact, SL4 sampled, naive map fails, chain relation", 300, critTrivialization},
      {5, "product machinery on GL3 (exact)", 120, critProduct},
      {6, "duality on GL3 (exact)", 60, critDuality},
      {7, "diagonalization and vMap", 60, critDiagonalization},
      {8, "u_w on the GL3 cell (exact)", 60, critUw},
      {9, "invariant functions: eta characters, W_J and f invariance", 120, critInvariants},
      {10, "tropicalization: SL2 cell, oracle, functoriality, GL3 box, product rule", 120, critTropicalization},
      {11, "Weyl combinatorics: Demazure, projectJ, w_{m,n}, D4, tilde T", 60, critWeyl},
      {12, "Gauss/pi layer: LDU, pi identities, minor identity", 30, critGaussLayer},
  };
  std::vector<int> only;
  for (int k = 1; k < argc; ++k) only.push_back(std::atoi(argv[k]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool inTime = secs < c.limit;
    bool ok = o.pass && inTime;
    failures += !ok;
    char line[256];
    std::snprintf(line, sizeof line, "%s [%2d] %s (%.2f s, limit %.0f s)", ok ? "PASS" : "FAIL", c.id,
                  c.title.c_str(), secs, c.limit);
    std::cout << line << "\n";
    if (!inTime) std::cout << "       over the time limit\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    std::cout.flush();
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failures ? 1 : 0;
}

#include "crystalforge/tropic.hpp"
#include "crystalforge/unicrys.hpp"
#include "doctest.h"

using namespace cf;

namespace {
RatFunc P(const std::string& s, const VarNames& v) { return parseRatFunc(s, v); }

std::vector<IVec> grid2(int r) {
  std::vector<IVec> out;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b) out.push_back({a, b});
  return out;
}
}  // namespace

TEST_CASE("tropicalize node rules") {
  auto x = PosExpr::var(0), y = PosExpr::var(1);
  VarNames v{"x", "y"};
  CHECK((x + y).arity() == 2);
  TropExpr s = tropicalize(x + y, 2);
  CHECK(s.str(v) == "min(x, y)");
  CHECK(tropicalize(x * y, 2).str(v) == "x + y");
  TropExpr t = tropicalize((x * y + PosExpr::constant(1)) / x, 2);
  CHECK(t.str(v) == "min(x + y, 0) - x");
  for (const auto& p : grid2(4)) CHECK(t.evaluate(p) == std::min(p[0] + p[1], 0L) - p[0]);
  CHECK_THROWS_AS(PosExpr::constant(Rational(-1)), NotCertifiedPositive);
  CHECK_THROWS_AS(tropicalize(P("x-1", {"x"})), NotCertifiedPositive);
  CHECK(tropicalize(P("x+1", {"x"})).evaluate({3}) == 0);
}

TEST_CASE("degree oracle") {
  auto x = PosExpr::var(0), y = PosExpr::var(1);
  CHECK(degOracle(x + y, {2, 5}) == 2);
  CHECK(degOracle(x * y, {1, 3}) == 4);
  CHECK(degOracle(P("x/(1+x^2)", {"x"}), {-3}) == 3);
  CHECK_THROWS_AS(degOracle(RatFunc(0L), {1}), ZeroFunction);
}

TEST_CASE("oracle coherence on random positive DAGs") {
  std::mt19937_64 rng(kDefaultSeed);
  int pairs = 0, bad = 0;
  for (int k = 0; k < 40; ++k) {
    PosExpr e = randomPosExpr(3, 1 + k % 6, rng);
    TropExpr t = tropicalize(e, 3);
    for (long a : {-3L, 0L, 2L})
      for (long b : {-1L, 1L})
        for (long c : {-2L, 4L}) {
          ++pairs;
          if (t.evaluate({a, b, c}) != degOracle(e, {a, b, c})) ++bad;
        }
  }
  CHECK(pairs == 480);
  CHECK(bad == 0);
}

TEST_CASE("functoriality") {
  auto x = PosExpr::var(0), y = PosExpr::var(1);
  std::vector<PosExpr> f{x * y, y}, g{x + y};
  auto r = checkFunctoriality(f, g, 2, grid2(5));
  CHECK(r.samples == 121);
  CHECK(r.pass());
  auto id = checkFunctoriality({x, y}, {x, y}, 2, grid2(2));
  CHECK(id.pass());

  // f(c) = c - 1 and g(c) = c + 1: both degrees are min(l, 0) while deg(g o f) = l.
  VarNames v{"c"};
  Tuple fc{P("c-1", v)}, gc{P("c+1", v)};
  for (long l = -5; l <= 5; ++l) {
    auto rl = checkFunctoriality(fc, gc, {{l}});
    CHECK(rl.pass() == (l <= 0));
  }
}

TEST_CASE("PLMap JSON") {
  auto x = PosExpr::var(0), y = PosExpr::var(1);
  PLMap f{{"x", "y"}, {tropicalize((x * y + PosExpr::constant(1)) / x, 2), tropicalize(x + y, 2)}};
  std::string s = toJson(f);
  CHECK(s == R"({"vars":["x","y"],"components":[{"minus":[{"min":[{"lin":[1,1]},{"lin":[0,0]}]},{"lin":[1,0]}]},)"
             R"({"min":[{"lin":[1,0]},{"lin":[0,1]}]}]})");
  PLMap g = plMapFromJson(s);
  CHECK(toJson(g) == s);
  CHECK(g.evaluate({2, -3}) == IVec{-3, -3});
  CHECK_THROWS_AS(plMapFromJson("{\"vars\":[\"x\"],\"components\":[{\"lin\":[1,2]}]}"), ParseError);
  CHECK_THROWS_AS(plMapFromJson("{\"vars\":[\"x\"],\"components\":[{\"max\":[{\"lin\":[1]}]}]}"), ParseError);
  CHECK_THROWS_AS(plMapFromJson("not json"), ParseError);
}

TEST_CASE("SL2 cell tropicalizes to the elementary crystal") {
  auto s2 = GroupCtx::SL(2);
  CombCrystal C = tropCrystal(induced(standardCell(s2, {1})));
  CHECK(C.e.at(1)[0].str({"ζ", "n"}) == "ζ + n");
  CHECK(C.gammaAt({3}) == IVec{3, -3});
  for (long z = -4; z <= 4; ++z) CHECK(C.phi.at(1).evaluate(C.applyE(1, 1, {z})) == C.phi.at(1).evaluate({z}) - 1);
  CombCrystal E = elementaryComb(s2->datum(), 1);
  CHECK(compareOnBox(C, E, 5).pass());
  CHECK(verifyWCrystalBox(E, 3).pass());
}

TEST_CASE("W-crystal box checks") {
  auto g3 = GroupCtx::GL(3);
  CombCrystal C = tropCrystal(induced(standardCell(g3, {1, 2, 1})));
  auto r = verifyWCrystalBox(C, 3);
  CHECK(r.points == 343);
  CHECK(r.pass());
  CHECK(verifyWCrystalBox(latticeComb(g3->datum()), 2).pass());
  CHECK(verifyWCrystalBox(tropCrystal(induced(standardCell(GroupCtx::foldedC2(), {1, 2, 1, 2}))), 2).pass());

  // Negative control: drop one branch of a min.
  CombCrystal bad = C;
  bool dropped = false;
  for (auto& t : bad.e.at(1)) {
    if (dropped || t.kind() != TropExpr::Kind::Minus) continue;
    const auto& a = t.kids()[0];
    if (a.kind() != TropExpr::Kind::Min) continue;
    std::vector<TropExpr> ks(a.kids().begin() + 1, a.kids().end());
    t = TropExpr::minus(TropExpr::min(ks), t.kids()[1]);
    dropped = true;
  }
  REQUIRE(dropped);
  CHECK_FALSE(verifyWCrystalBox(bad, 2).pass());
}

TEST_CASE("combinatorial operations") {
  auto s2 = GroupCtx::SL(2);
  CombCrystal B1 = elementaryComb(s2->datum(), 1);
  CHECK(B1.applyE(1, 1, {4}) == IVec{5});
  CombCrystal prod = productRule(B1, B1);
  auto geo = tropCrystal(induced(product(standardCell(s2, {1}), standardCell(s2, {1}))));
  CHECK(compareOnBox(prod, geo, 5).pass());
  CHECK(verifyWCrystalBox(prod, 3).pass());

  auto g3 = GroupCtx::GL(3);
  auto X = standardCell(g3, {1, 2}), Y = standardCell(g3, {2, 1});
  CombCrystal pr = productRule(tropCrystal(induced(X)), tropCrystal(induced(Y)));
  CHECK(compareOnBox(pr, tropCrystal(induced(product(X, Y))), 2).pass());

  CombCrystal D = dualComb(B1);
  CHECK(D.applyE(1, 1, {4}) == IVec{3});
  CHECK(D.gammaAt({2}) == IVec{-2, 2});
  CHECK(compareOnBox(dualComb(D), B1, 4).pass());
  CHECK(verifyWCrystalBox(D, 3).pass());
  CombCrystal L = latticeComb(g3->datum());
  CHECK(L.applyE(2, 3, {0, 0, 0}) == IVec{0, 3, -3});
}

TEST_CASE("crystal graph DOT") {
  auto s2 = GroupCtx::SL(2);
  CombCrystal B1 = elementaryComb(s2->datum(), 1);
  std::string d = crystalGraphDOT(B1, 1);
  CHECK(d ==
        "digraph crystal {\n"
        "  \"(-1)\" [label=\"(-1,1)\"];\n"
        "  \"(0)\" [label=\"(0,0)\"];\n"
        "  \"(1)\" [label=\"(1,-1)\"];\n"
        "  \"(-1)\" -> \"(0)\" [label=\"1\"];\n"
        "  \"(0)\" -> \"(1)\" [label=\"1\"];\n"
        "}\n");
  CHECK(crystalGraphDOT(B1, -1) == "digraph crystal {\n}\n");
  auto C = tropCrystal(induced(standardCell(GroupCtx::GL(3), {1, 2, 1})));
  CHECK(crystalGraphDOT(C, 2) == crystalGraphDOT(C, 2));
  CHECK(boxPoints(3, 2).size() == 125);
}

TEST_CASE("GL3 trop crystal against frozen valuation values") {
  // Lowest t-degree of the geometric e_i at z_k = a_k t^{p_k}, c = a t^n, computed with sympy.
  auto C = tropCrystal(induced(standardCell(GroupCtx::GL(3), {1, 2, 1})));
  struct Row {
    IVec p;
    int i;
    long n;
    IVec out;
  };
  const std::vector<Row> rows{
      {{1, -2, 3}, 1, -3, {1, -2, 0}},   {{1, -2, 3}, 1, 2, {1, -2, 5}},  {{1, -2, 3}, 2, -3, {1, -5, 3}},
      {{1, -2, 3}, 2, 2, {1, 0, 3}},     {{-4, 0, 2}, 1, -3, {-7, 0, 2}}, {{-4, 0, 2}, 1, 2, {-2, 0, 2}},
      {{-4, 0, 2}, 2, -3, {-4, -3, 2}},  {{-4, 0, 2}, 2, 2, {-4, 2, 2}},  {{2, 5, -1}, 1, -3, {-1, 5, -1}},
      {{2, 5, -1}, 1, 2, {4, 5, -1}},    {{2, 5, -1}, 2, -3, {2, 2, -1}}, {{2, 5, -1}, 2, 2, {2, 7, -1}}};
  for (const auto& r : rows) CHECK(C.applyE(r.i, r.n, r.p) == r.out);
}

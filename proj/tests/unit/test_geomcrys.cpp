#include "crystalforge/geomcrys.hpp"
#include "crystalforge/unicrys.hpp"
#include "doctest.h"

using namespace cf;

namespace {
RatFunc P(const std::string& s, const VarNames& v) { return parseRatFunc(s, v); }

GeomCrystal sl2Cell() { return induced(standardCell(GroupCtx::SL(2), {1})); }

VerifyOptions exact() { return VerifyOptions{}; }
}  // namespace

TEST_CASE("SL2 standard crystal") {
  GeomCrystal X = sl2Cell();
  VarNames v{"z", "c"};
  REQUIRE(X.support == std::vector<int>{1});
  CHECK(equals(X.eMap.at(1)[0], P("c*z", v)));
  CHECK(equals(X.phi.at(1), P("1/z", v)));
  CHECK(equals(X.gamma[0], P("z", v)));
  CHECK(equals(X.gamma[1], P("1/z", v)));
  CHECK(checkPreCrystal(X).ok());

  GeomCrystal bad = X;
  bad.eMap[1] = {P("c*z+1", v)};
  auto rep = checkPreCrystal(bad);
  CHECK_FALSE(rep.unital);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("pre-crystal axioms on products and duals") {
  auto sl2 = GroupCtx::SL(2);
  auto XY = product(standardCell(sl2, {1}), standardCell(sl2, {1}));
  CHECK(checkPreCrystal(induced(XY)).ok());
  auto g3 = GroupCtx::GL(3);
  auto C = standardCell(g3, {1, 2, 1});
  CHECK(checkPreCrystal(induced(C)).ok());
  CHECK(checkPreCrystal(dualize(induced(C))).ok());
}

TEST_CASE("dualize") {
  GeomCrystal X = sl2Cell();
  GeomCrystal D = dualize(X);
  CHECK(equals(D.eMap.at(1)[0], P("z/c", {"z", "c"})));
  CHECK(sameCrystal(dualize(D), X));
  CHECK(equals(D.gamma[0], P("1/z", {"z"})));
}

TEST_CASE("associated roots and composeEI") {
  auto s3 = GroupCtx::SL(3);
  auto roots = associatedRoots(s3->datum(), {1, 2});
  CHECK(roots[0] == IVec{1, 0, -1});
  CHECK(roots[1] == s3->datum()->root(2));
  CHECK_THROWS_AS(associatedRoots(s3->datum(), {1, 1}), NotReduced);

  // SL2: composeEI((1)) at t = alpha^v(c) is e_1^{c^2}.
  GeomCrystal X = sl2Cell();
  Tuple x = variables(2, 0, 1);
  RatFunc c = RatFunc::var(1, 2);
  Tuple lhs = composeEI(X, {1}, X.ctx->cocharTorus(X.ctx->datum()->coroot(1), c), x);
  CHECK(equalTuples(lhs, applyE(X, 1, c * c, x)));
}

TEST_CASE("composeEI at gamma^{-1} is the W-action") {
  auto g3 = GroupCtx::GL(3);
  GeomCrystal X = induced(standardCell(g3, {1, 2, 1}));
  Tuple x = variables(3);
  Torus g = gammaAt(X, x);
  Torus ginv;
  for (auto& t : g) ginv.push_back(t.inv());
  for (const Word& w : {Word{1}, Word{1, 2}, Word{2, 1}, Word{1, 2, 1}})
    CHECK(equalTuples(composeEI(X, w, ginv, x), weylAct(X, w, x)));
}

TEST_CASE("Verma relations") {
  auto g3 = GroupCtx::GL(3);
  GeomCrystal X = induced(standardCell(g3, {1, 2, 1}));
  auto r = verifyVerma(X, VermaPattern::A2, 1, 2, exact());
  CHECK(r.pass);
  CHECK(r.mode == Mode::Exact);
  CHECK_THROWS_AS(verifyVerma(X, VermaPattern::A1A1, 1, 2, exact()), PatternMismatch);
  CHECK_THROWS_AS(verifyVerma(X, VermaPattern::B2, 1, 2, exact()), PatternMismatch);

  GeomCrystal bad = X;
  bad.eMap[1][0] = bad.eMap[1][0] * RatFunc::var(3, 4);  // extra factor of c
  CHECK_FALSE(verifyVerma(bad, VermaPattern::A2, 1, 2, exact()).pass);

  VerifyOptions s;
  s.mode = Mode::Sampled;
  auto rs = verifyVerma(X, VermaPattern::A2, 2, 1, s);
  CHECK(rs.pass);
  CHECK(rs.points == 20);
}

TEST_CASE("W-action on SL2 and GL3") {
  GeomCrystal X = sl2Cell();
  Tuple z = variables(1);
  CHECK(equals(weylAct(X, Word{1}, z)[0], P("1/z", {"z"})));

  auto g3 = GroupCtx::GL(3);
  GeomCrystal Y = induced(standardCell(g3, {1, 2, 1}));
  Tuple x = variables(3);
  for (int i : {1, 2}) CHECK(equalTuples(weylAct(Y, Word{i, i}, x), x));
  CHECK(equalTuples(weylAct(Y, Word{1, 2, 1}, x), weylAct(Y, Word{2, 1, 2}, x)));
  // gamma(w(x)) = w(gamma(x)) for w = s1 s2: permute the diagonal.
  auto w = WeylElt::fromWord(g3->datum(), {1, 2});
  Torus g = gammaAt(Y, x), gw = gammaAt(Y, weylAct(Y, w, x));
  auto p = w.permutation();
  for (int k = 0; k < 3; ++k) CHECK(equals(gw[p[k]], g[k]));
  CHECK_THROWS_AS(weylAct(induced(standardCell(g3, {1})), Word{2}, variables(1)), NotSupported);
}

TEST_CASE("lambda shift") {
  auto g3 = GroupCtx::GL(3);
  GeomCrystal X = induced(standardCell(g3, {1, 2, 1}));
  Tuple x = variables(3);
  // <alpha_1^v, lambda> = 0 for lambda = e1 + e2.
  IVec lam{1, 1, 0};
  CHECK(equalTuples(lambdaShift(X, 1, lam, lambdaShift(X, 1, lam, x), true), x));
  // <alpha_1^v, -alpha_1> = -2: self-inverse.
  IVec neg{-1, 1, 0};
  CHECK(equalTuples(lambdaShift(X, 1, neg, lambdaShift(X, 1, neg, x)), x));
}

TEST_CASE("trivialization on SL2 and SL3") {
  auto s2 = GroupCtx::SL(2);
  GeomCrystal X = induced(standardCell(s2, {1}));
  Tuple z = variables(1);
  Tuple tz = trivialize(X, z);
  CHECK(equals(tz[0], RatFunc(1L)));
  checkGammaDominant(X);

  auto s3 = GroupCtx::SL(3);
  GeomCrystal Y = induced(standardCell(s3, {1, 2, 1}));
  checkGammaDominant(Y);
  Tuple x = variables(3);
  for (bool flip : {false, true}) {
    Tuple t = trivialize(Y, x, flip);
    Torus g = gammaAt(Y, t);
    for (auto& gk : g) CHECK(equals(gk, RatFunc(1L)));
    for (int j : {1, 2}) CHECK(equalTuples(trivialize(Y, weylAct(Y, Word{j}, x), flip), t));
  }
  Tuple nv = naiveTrivialize(Y, x);
  for (auto& gk : gammaAt(Y, nv)) CHECK(equals(gk, RatFunc(1L)));
  bool invariant = true;
  for (int j : {1, 2}) invariant = invariant && equalTuples(naiveTrivialize(Y, weylAct(Y, Word{j}, x)), nv);
  CHECK_FALSE(invariant);
  CHECK_THROWS_AS(checkGammaDominant(induced(standardCell(s3, {1}))), DegenerateGamma);
  CHECK_THROWS_AS(trivialize(induced(standardCell(GroupCtx::GL(3), {1})), variables(1)), NotSupported);
}

TEST_CASE("chain relation") {
  auto s3 = GroupCtx::SL(3);
  GeomCrystal Y = induced(standardCell(s3, {1, 2, 1}));
  Tuple x = variables(5, 0, 3);
  RatFunc c = RatFunc::var(3, 5), c2 = RatFunc::var(4, 5);
  for (int j : {1, 2}) {
    auto [l, r] = chainSides(Y, j, c, c2, x);
    CHECK(equalTuples(l, r));
  }
}

TEST_CASE("B2 relation on the folded crystal, sampled") {
  auto c2 = GroupCtx::foldedC2();
  GeomCrystal X = induced(standardCell(c2, {1, 2, 1, 2}));
  CHECK(checkPreCrystal(X).ok());
  VerifyOptions s;
  s.mode = Mode::Sampled;
  CHECK(verifyVerma(X, VermaPattern::B2, 1, 2, s).pass);
  CHECK_THROWS_AS(verifyVerma(X, VermaPattern::B2, 2, 1, s), PatternMismatch);
}

TEST_CASE("crystal JSON") {
  auto s = toJson(sl2Cell());
  CHECK(s.find("\"support\"") != std::string::npos);
  CHECK(s.find("z1*c") != std::string::npos);
}

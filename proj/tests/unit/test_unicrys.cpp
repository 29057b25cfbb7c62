#include "crystalforge/unicrys.hpp"
#include "doctest.h"

using namespace cf;

namespace {
RatFunc P(const std::string& s, const VarNames& v) { return parseRatFunc(s, v); }

bool sameMatrix(const MatRF& a, const MatRF& b) { return equals(a, b); }

std::vector<Word> gl3Words() { return {{1}, {2}, {1, 2}, {2, 1}, {1, 2, 1}, {2, 1, 2}}; }
}  // namespace

TEST_CASE("standard cells") {
  auto s2 = GroupCtx::SL(2);
  auto X = standardCell(s2, {1});
  VarNames v{"z"};
  CHECK(sameMatrix(X.f(), MatRF::fromRows({{P("z", v), 0L}, {1L, P("1/z", v)}})));
  auto g3 = GroupCtx::GL(3);
  auto C = standardCell(g3, {1, 2});
  CHECK(sameMatrix(C.f(), product(oneDim(g3, 1), oneDim(g3, 2)).f()));
  Tuple z = variables(2);
  Torus expect = g3->cocharTorus(g3->datum()->coroot(1), z[0]);
  Torus t2 = g3->cocharTorus(g3->datum()->coroot(2), z[1]);
  for (int k = 0; k < 3; ++k) CHECK(equals(C.f()(k, k), expect[k] * t2[k]));
  CHECK(equals(standardCell(GroupCtx::SL(3), {1, 2, 1}).f().det(), RatFunc(1L)));
  CHECK_THROWS_AS(standardCell(g3, {1, 1}), NotReduced);
  CHECK(C.support() == std::vector<int>{1, 2});
}

TEST_CASE("product and point crystal") {
  auto g3 = GroupCtx::GL(3);
  auto A = oneDim(g3, 1), B = oneDim(g3, 2), C = oneDim(g3, 1);
  auto l = product(product(A, B), C), r = product(A, product(B, C));
  CHECK(sameMatrix(l.f(), r.f()));
  Tuple x = variables(4, 0, 3);
  RatFunc a = RatFunc::var(3, 4);
  for (int i : {1, 2}) {
    auto [xl, al] = actU(l, i, a, x);
    auto [xr, ar] = actU(r, i, a, x);
    CHECK(equalTuples(xl, xr));
    CHECK(equals(al, ar));
  }
  auto pt = pointCrystal(g3);
  CHECK(sameMatrix(product(A, pt).f(), A.f()));
  CHECK(sameMatrix(product(pt, A).f(), A.f()));
}

TEST_CASE("U-action on one-dimensional factors") {
  auto s2 = GroupCtx::SL(2);
  auto X = standardCell(s2, {1});
  VarNames v{"z", "a"};
  Tuple z{RatFunc::var(0, 2)};
  RatFunc a = RatFunc::var(1, 2);
  auto [z1, a1] = actU(X, 1, a, z);
  CHECK(equals(z1[0], P("z+a", v)));
  // pi^-(x_1(a) pi_1(z)) = pi_1(z + a); the U-part is x_1(a').
  MatRF g = s2->x(1, a) * X.f();
  CHECK(sameMatrix(piMinus(g), fAt(X, z1)));
  CHECK(sameMatrix(piPlus(g), s2->x(1, a1)));

  auto g3 = GroupCtx::GL(3);
  auto Y = standardCell(g3, {2});
  CHECK(equals(actU(Y, 1, a, z).first[0], z[0]));
}

TEST_CASE("actU agrees with the matrix definition") {
  auto g3 = GroupCtx::GL(3);
  for (const auto& w : gl3Words()) {
    auto X = standardCell(g3, w);
    int m = X.m();
    Tuple x = variables(m + 1, 0, m);
    RatFunc a = RatFunc::var(m, m + 1);
    for (int i : {1, 2}) {
      auto [x1, a1] = actU(X, i, a, x);
      MatRF g = g3->x(i, a) * fAt(X, x);
      CHECK(sameMatrix(piMinus(g), fAt(X, x1)));
      CHECK(sameMatrix(piPlus(g), g3->x(i, a1)));
      auto [x2, u2] = actUMatrix(X, g3->x(i, a), x);
      CHECK(equalTuples(x1, x2));
      CHECK(sameMatrix(u2, g3->x(i, a1)));
    }
  }
}

TEST_CASE("dual action agrees with the matrix definition") {
  auto g3 = GroupCtx::GL(3);
  auto X = dual(product(standardCell(g3, {1, 2}), oneDim(g3, 1)));
  int m = X.m();
  Tuple x = variables(m + 1, 0, m);
  RatFunc a = RatFunc::var(m, m + 1);
  for (int i : {1, 2}) {
    auto [x1, a1] = actU(X, i, a, x);
    MatRF g = g3->x(i, a) * fAt(X, x);
    CHECK(sameMatrix(piMinus(g), fAt(X, x1)));
    CHECK(sameMatrix(piPlus(g), g3->x(i, a1)));
  }
  CHECK(sameMatrix(dual(dual(X)).f(), X.f()));
  auto s2 = GroupCtx::SL(2);
  VarNames v{"z"};
  CHECK(sameMatrix(dual(standardCell(s2, {1})).f(), MatRF::fromRows({{P("1/z", v), 0L}, {-1L, P("z", v)}})));
}

TEST_CASE("induced crystal: recursive vs direct") {
  auto s2 = GroupCtx::SL(2);
  auto G = induced(standardCell(s2, {1}));
  CHECK(equals(G.eMap.at(1)[0], P("c*z", {"z", "c"})));
  auto g3 = GroupCtx::GL(3);
  for (const auto& w1 : gl3Words())
    for (const auto& w2 : std::vector<Word>{{1}, {2}, {1, 2}}) {
      auto X = product(standardCell(g3, w1), standardCell(g3, w2));
      auto R = induced(X, InduceMode::Recursive), D = induced(X, InduceMode::Direct);
      CHECK(sameCrystal(R, D));
    }
}

TEST_CASE("phi of a product") {
  auto g3 = GroupCtx::GL(3);
  auto X = standardCell(g3, {1, 2}), Y = standardCell(g3, {2, 1});
  auto Z = product(X, Y);
  auto GX = induced(X), GY = induced(Y), GZ = induced(Z);
  int m = Z.m();
  Tuple x = variables(m, 0, 2), y = variables(m, 2, 2);
  for (int i : {1, 2}) {
    RatFunc rhs = phiAt(GX, i, x) + phiAt(GY, i, y) / g3->alpha(i, gammaAt(GX, x));
    CHECK(equals(GZ.phi.at(i), rhs));
  }
  CHECK(GZ.support == std::vector<int>{1, 2});
  CHECK(induced(standardCell(g3, {1})).support == std::vector<int>{1});
}

TEST_CASE("cocycle identity") {
  auto g3 = GroupCtx::GL(3);
  auto X = standardCell(g3, {1, 2, 1});
  Tuple x = variables(5, 0, 3);
  RatFunc a = RatFunc::var(3, 5), a2 = RatFunc::var(4, 5);
  for (int i : {1, 2}) {
    Tuple ux = actU(X, i, a, x).first;
    MatRF lhs = piPlus(g3->x(i, a2) * fAt(X, ux)) * piPlus(g3->x(i, a) * fAt(X, x));
    MatRF rhs = piPlus(g3->x(i, a2) * g3->x(i, a) * fAt(X, x));
    CHECK(sameMatrix(lhs, rhs));
  }
}

TEST_CASE("duality") {
  auto g3 = GroupCtx::GL(3);
  for (const auto& w : gl3Words()) {
    auto X = standardCell(g3, w);
    CHECK(sameCrystal(induced(dual(X)), dualize(induced(X))));
    auto G = induced(X), D = induced(dual(X));
    for (int i : G.support) CHECK(equals(D.phi.at(i), -G.phi.at(i) * g3->alpha(i, G.gamma)));
  }
  // (X x Y)^* vs Y^* x X^* after swapping coordinates.
  auto X = standardCell(g3, {1, 2}), Y = standardCell(g3, {2});
  auto L = dual(product(X, Y)), R = product(dual(Y), dual(X));
  Tuple swap{RatFunc::var(2, 3), RatFunc::var(0, 3), RatFunc::var(1, 3)};
  CHECK(sameMatrix(L.f(), substitute(R.f(), swap)));
}

TEST_CASE("Levi restriction") {
  auto g3 = GroupCtx::GL(3);
  auto X = standardCell(g3, {1, 2});
  auto R = restrictLevi(X, {1});
  CHECK(R.support() == std::vector<int>{1});
  CHECK(chiBarLower(*g3, 2, R.f()).isZero());
  CHECK(sameMatrix(restrictLevi(X, {1, 2}).f(), X.f()));
  auto Y = standardCell(g3, {2, 1});
  CHECK(sameMatrix(restrictLevi(product(X, Y), {1}).f(), product(restrictLevi(X, {1}), restrictLevi(Y, {1})).f()));
  CHECK_THROWS_AS(actU(R, 2, RatFunc(1L), variables(2)), NotSupported);
  // U_L-equivariance of p^-_L.
  Tuple x = variables(3, 0, 2);
  RatFunc a = RatFunc::var(2, 3);
  Tuple x1 = actU(R, 1, a, x).first;
  CHECK(sameMatrix(leviProjection(*g3, {1}, piMinus(g3->x(1, a) * fAt(X, x))), fAt(R, x1)));
}

TEST_CASE("diagonalization") {
  auto g2 = GroupCtx::GL(2);
  auto X = standardCell(g2, {1});
  VerifyOptions ex;
  auto r = diagonalize(X, X, 1, ex);
  CHECK(r.pass);
  CHECK(r.mode == Mode::Exact);
  CHECK_THROWS_AS(diagonalize(standardCell(GroupCtx::GL(3), {1}), X, 1, ex), Degenerate);
}

TEST_CASE("u_w on the GL3 cell") {
  auto g3 = GroupCtx::GL(3);
  auto X = standardCell(g3, {1, 2, 1});
  auto G = induced(X);
  Tuple x = variables(3);
  MatRF b = X.f();
  CHECK(sameMatrix(uW(*g3, {}, b), MatRF::identity(3)));
  for (const auto& w : allElements(g3->datum())) {
    for (const auto& word : reducedWords(w)) {
      MatRF u = uW(*g3, word, b);
      CHECK(u.isUnitUpper());
      CHECK(sameMatrix(u * b * u.inverse(), fAt(X, weylAct(G, word, x))));
      for (int k = 1; k < int(word.size()); ++k) CHECK(sameMatrix(uW(*g3, word, b, k), u));
    }
  }
  // SL2 closed form.
  auto s2 = GroupCtx::SL(2);
  auto Y = standardCell(s2, {1});
  VarNames v{"z"};
  CHECK(sameMatrix(uSimple(*s2, 1, Y.f()), s2->x(1, P("(1-z^2)/z", v))));
}

TEST_CASE("invariant functions") {
  auto s2 = GroupCtx::SL(2);
  auto s1 = WeylElt::fromWord(s2->datum(), {1});
  auto chi1 = UChar::basis(*s2, {1});
  CHECK(chiW(*s2, chi1, s1, s2->sbar(1)).isZero());

  auto g3 = GroupCtx::GL(3);
  for (const auto& w : allElements(g3->datum())) {
    if (w.length() == 0) continue;
    auto X = standardCell(g3, w.word());
    MatRF b = X.f();
    MatRF eta = g3->etaW(false, w, b);
    for (int i : {1, 2}) {
      auto chi = UChar::basis(*g3, {i});
      CHECK(equals(chi(*g3, eta), chiW(*g3, chi, w.inverse(), g3->iota(b))));
    }
  }
  // chi^w(g u) = chi^w(g) + chi(u).
  auto w = WeylElt::fromWord(g3->datum(), {1, 2});
  auto X = standardCell(g3, {1, 2});
  RatFunc a = RatFunc::var(2, 3);
  MatRF g = substitute(X.f(), variables(3, 0, 2));
  auto chi = UChar::basis(*g3, {1, 2});
  for (int i : {1, 2})
    CHECK(equals(chiW(*g3, chi, w, g * g3->x(i, a)), chiW(*g3, chi, w, g) + a));
}

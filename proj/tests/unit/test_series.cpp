#include <doctest.h>

#include <algorithm>

#include "reflekt/catalog.hpp"
#include "reflekt/invariants.hpp"
#include "support.hpp"

using namespace reflekt;

TEST_SUITE("series") {

TEST_CASE("inverses of 1 - x and det(1 - x g)") {
  TruncSeries one_minus_x = TruncSeries::from_poly({Cyclotomic(1), Cyclotomic(-1)}, 3);
  TruncSeries inv = one_minus_x.inverse();
  for (int k = 0; k <= 3; ++k) CHECK(inv[k] == Cyclotomic(1));
  CHECK(one_minus_x * inv == TruncSeries::one(3));

  auto d = det_one_minus_xg(CycMatrix::diag({cyc_root(4, 1)}));
  TruncSeries s = TruncSeries::from_poly(d, 4).inverse();
  for (int k = 0; k <= 4; ++k) CHECK(s[k] == cyc_root(4, k));
}

TEST_CASE("random series invert") {
  auto rng = test::rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    int T = 1 + int(rng() % 12);
    TruncSeries a(T);
    a[0] = Cyclotomic(1) + test::random_cyc(rng, 1).pow(2);
    for (int k = 1; k <= T; ++k) a[k] = test::random_cyc(rng, 5);
    CHECK(a * a.inverse() == TruncSeries::one(T));
  }
}

TEST_CASE("degree deconvolution round-trips") {
  auto rng = test::rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + int(rng() % 4);
    DegreeMultiset d(r);
    for (auto &x : d) x = 1 + int(rng() % 9);
    std::sort(d.begin(), d.end());
    int T = 0;
    for (int x : d) T += x;
    TruncSeries f = degree_product_series(d, T + 2);
    CHECK(deconvolve_degrees(f, r) == d);
  }
  // a series that is not a product of 1/(1 - x^d)
  TruncSeries bad = TruncSeries::from_poly({Cyclotomic(1), Cyclotomic(2)}, 6);
  CHECK_THROWS_AS(deconvolve_degrees(bad, 1), DeconvolutionError);
}

TEST_CASE("molien series by brute force over the matrices") {
  // average 1/det(1 - x g) straight from the matrices, no eigenvalues
  auto brute = [](ReflectionGroup const &G, int T) {
    TruncSeries acc(T);
    for (int g = 0; g < G.order(); ++g) acc += TruncSeries::from_poly(det_one_minus_xg(G.element(g)), T).inverse();
    return acc.scaled(Cyclotomic(Rational(1, G.order())));
  };
  ReflectionGroup C6 = make_cyclic(6);
  CHECK(deconvolve_degrees(brute(C6, 8), 1) == DegreeMultiset{6});
  ReflectionGroup G422 = make_imprimitive(4, 2, 2);
  TruncSeries m = brute(G422, 10);
  CHECK(m == molien(G422, 10));
  CHECK(deconvolve_degrees(m, 2) == DegreeMultiset{4, 4});
  ReflectionGroup G15 = load_group(data_dir() + "/groups/g15.json");
  CHECK(deconvolve_degrees(brute(G15, 40), 2) == DegreeMultiset{12, 24});
}

TEST_CASE("linear factor checks") {
  CHECK(bivar_factor_check(linear_factor_product({{1, 0}}), {{1, 0}}));
  BivarPoly qt_t;
  qt_t.add_term(1, 1, Rational(1));
  qt_t.add_term(0, 1, Rational(1));
  CHECK(qt_t == linear_factor_product({{1, 0}}));
  CHECK(qt_t.str() == "qt + t");

  // (qt+5t+6)(qt+7t+16) by hand
  BivarPoly a, b;
  a.add_term(1, 1, Rational(1));
  a.add_term(0, 1, Rational(5));
  a.add_term(0, 0, Rational(6));
  b.add_term(1, 1, Rational(1));
  b.add_term(0, 1, Rational(7));
  b.add_term(0, 0, Rational(16));
  CHECK(bivar_factor_check(a * b, {{5, 6}, {7, 16}}));
  CHECK_FALSE(bivar_factor_check(a * b, {{5, 16}, {7, 6}}));

  BivarPoly q2t2;
  q2t2.add_term(2, 2, Rational(1));
  CHECK(bivar_factor_check(q2t2, {{0, 0}, {0, 0}}));
}

TEST_CASE("specializations of a product") {
  BivarPoly p = linear_factor_product({{5, 6}, {7, 16}});
  CHECK(p.at_t_one() == q_product({11, 23}));
  CHECK(p.hasse_t(2) == q_product({5, 7}));
  CHECK(p.at_q_one().coeff(0, 2) == Rational(48));
}

}

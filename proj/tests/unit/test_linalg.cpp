#include <doctest.h>

#include <algorithm>

#include <omp.h>

#include "reflekt/kernels.hpp"
#include "support.hpp"

using namespace reflekt;

namespace {

CycMatrix g12_generator() {
  return CycMatrix::from_rows({{Cyclotomic(0), cyc_root(8, 1)}, {cyc_root(8, -1), Cyclotomic(0)}});
}

// random monomial matrix with root-of-unity entries, conjugated by a random
// invertible matrix; its eigenvalues are known from the cycle structure
struct Planted {
  CycMatrix g;
  EigenMultiset want;
};

Planted planted(std::mt19937_64 &rng, int n, int o) {
  std::vector<int> res(n);
  for (auto &r : res) r = int(rng() % o);
  CycMatrix d = CycMatrix::identity(n);
  EigenMultiset e;
  e.order = o;
  e.mult.assign(o, 0);
  for (int i = 0; i < n; ++i) {
    d(i, i) = cyc_root(o, res[i]);
    ++e.mult[res[i]];
  }
  CycMatrix p;
  do p = test::random_matrix(rng, n, n, 1);
  while (mat_det(p).is_zero());
  return {mat_mul(mat_mul(p, d), mat_inverse(p)), e};
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("determinants") {
  CHECK(mat_det(CycMatrix::identity(2)) == Cyclotomic(1));
  CHECK(mat_det(g12_generator()) == Cyclotomic(-1));
  CHECK(mat_det(CycMatrix::diag({cyc_root(4, 1), cyc_root(4, 1)})) == Cyclotomic(-1));
}

TEST_CASE("orders, eigenvalues, reflections") {
  CHECK(element_order(CycMatrix::diag({cyc_root(6, 1)})) == 6);
  CHECK(element_order(CycMatrix::identity(3)) == 1);
  CHECK(element_order(g12_generator()) == 2);

  EigenMultiset e = eigen_multiset(CycMatrix::diag({cyc_root(6, -1)}));
  CHECK(e.eigenvalues() == std::vector<std::pair<int, int>>{{6, 5}});
  CHECK(eigen_multiset(CycMatrix::identity(3)).fixed() == 3);
  EigenMultiset r = eigen_multiset(g12_generator());
  CHECK(r.order == 2);
  CHECK(r.mult == std::vector<int>{1, 1});

  CHECK(fix_dim(CycMatrix::identity(2)) == 2);
  CHECK(fix_dim(CycMatrix::diag({cyc_root(4, 1), Cyclotomic(1)})) == 1);
  CHECK(fix_dim(g12_generator()) == 1);
  CHECK_FALSE(is_reflection(CycMatrix::identity(2)));
  CHECK(is_reflection(CycMatrix::diag({cyc_root(3, 1), Cyclotomic(1)})));
  CHECK_FALSE(is_reflection(CycMatrix::diag({cyc_root(3, 1), cyc_root(3, 1)})));
  CHECK(is_reflection(g12_generator()));
}

TEST_CASE("eigen multisets and characteristic polynomials reconstruct") {
  auto rng = test::rng(10);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(rng() % 3), o = 1 + int(rng() % 8);
    Planted p = planted(rng, n, o);
    EigenMultiset got = eigen_multiset(p.g);
    // same eigenvalues, whatever order the library settles on
    auto norm = [](EigenMultiset const &e) {
      std::vector<Cyclotomic> v;
      for (auto [ord, j] : e.eigenvalues()) v.push_back(cyc_root(ord, j));
      std::vector<std::string> k;
      for (auto &c : v) k.push_back(c.key(840));
      std::sort(k.begin(), k.end());
      return k;
    };
    CHECK(norm(got) == norm(p.want));
    CHECK(got.size() == n);
    CHECK(eigen_multiset_from_traces(power_traces(p.g), n) == got);
    CHECK(det_one_minus_xg(p.g) == det_one_minus_xg(got));
    CHECK(got.inverse() == eigen_multiset(mat_inverse(p.g)));
  }
}

TEST_CASE("inverse, kernel, rank") {
  auto rng = test::rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 4), m = (int[]){1, 3, 4, 8, 12}[rng() % 5];
    CycMatrix a = test::random_matrix(rng, n, n, m);
    if (!mat_det(a).is_zero()) {
      CHECK(mat_mul(a, mat_inverse(a)).is_identity());
      CHECK(mat_det(mat_inverse(a)) * mat_det(a) == Cyclotomic(1));
    }
    // force a dependency: last row = sum of the others
    int rows = n + 1;
    CycMatrix b(rows, n + 2);
    CycMatrix top = test::random_matrix(rng, n, n + 2, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n + 2; ++j) {
        b(i, j) = top(i, j);
        b(n, j) += top(i, j);
      }
    int rk = rank(b);
    auto ker = kernel(b);
    CHECK(rk + int(ker.size()) == n + 2);
    CHECK(rk <= n);
    for (auto const &v : ker) {
      CycVector w = mat_vec(b, v);
      for (auto const &c : w) CHECK(c.is_zero());
    }
    Subspace S(n + 2, {top.row(0), top.row(1)});
    CycVector mix(n + 2);
    Cyclotomic c0 = test::random_cyc(rng, m), c1 = test::random_cyc(rng, m);
    for (int j = 0; j < n + 2; ++j) mix[j] = c0 * top(0, j) + c1 * top(1, j);
    CHECK(S.contains(mix));
    CHECK(S.combine(S.coordinates(mix)) == mix);
  }
}

TEST_CASE("parallel rref matches the serial reference") {
  auto rng = test::rng(12);
  int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  for (int trial = 0; trial < 3; ++trial) {
    int n = 48 + int(rng() % 8);
    CycMatrix a = test::random_matrix(rng, n, n + 3, 3);
    for (int j = 0; j < n + 3; ++j) a(n - 1, j) = a(0, j) + a(1, j);
    CycMatrix s = a, p = a;
    auto ps = kernels::rref(s, kernels::Exec::serial);
    auto pp = kernels::rref(p, kernels::Exec::parallel);
    CHECK(ps == pp);
    CHECK(s == p);
  }
  omp_set_num_threads(saved);
}

}

#include <doctest.h>

#include <algorithm>
#include <set>

#include "reflekt/catalog.hpp"
#include "reflekt/invariants.hpp"
#include "reflekt/polynomial.hpp"
#include "support.hpp"

using namespace reflekt;

namespace {

int count_order(std::vector<NormalSubgroupHandle> const &v, int order) {
  return int(std::count_if(v.begin(), v.end(), [&](auto const &N) { return N.order() == order; }));
}

std::vector<NormalSubgroupHandle> proper_nontrivial(ReflectionGroup const &G) {
  std::vector<NormalSubgroupHandle> out;
  for (auto &N : normal_reflection_subgroups(G))
    if (!N.is_whole() && !N.is_trivial()) out.push_back(std::move(N));
  return out;
}

} // namespace

TEST_SUITE("group") {

TEST_CASE("closure orders") {
  CHECK(make_cyclic(6).order() == 6);
  CHECK(make_imprimitive(4, 2, 2).order() == 16);
  CHECK(make_imprimitive(2, 2, 2).order() == 4);
  CHECK(load_group(data_dir() + "/groups/g12.json").order() == 48);
  CHECK(load_group(data_dir() + "/groups/g15.json").order() == 288);
  for (int ab = 1; ab <= 6; ++ab)
    for (int b = 1; b <= ab; ++b) {
      if (ab % b) continue;
      for (int r = 1; r <= 3; ++r) {
        int want = 1;
        for (int i = 0; i < r; ++i) want *= ab;
        for (int i = 2; i <= r; ++i) want *= i;
        CHECK(make_imprimitive(ab, b, r).order() == want / b);
      }
    }
}

TEST_CASE("group tables are consistent") {
  ReflectionGroup G = load_group(data_dir() + "/groups/g12.json");
  auto rng = test::rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    int a = int(rng() % G.order()), b = int(rng() % G.order());
    CHECK(G.element(G.mul(a, b)) == mat_mul(G.element(a), G.element(b)));
    CHECK(G.mul(a, G.inv(a)) == 0);
    CHECK(G.eigen(a) == eigen_multiset(G.element(a)));
  }
  CHECK(G.element(0).is_identity());
  CHECK(G.all_unitary());
}

TEST_CASE("reflections") {
  ReflectionGroup C6 = make_cyclic(6);
  CHECK(C6.reflections().size() == 5);
  CHECK(make_imprimitive(4, 2, 2).reflections().size() == 6);
  for (int g : C6.reflections()) CHECK(C6.is_reflection(g));
  // hyperplane orbits partition the reflections
  ReflectionGroup G15 = load_group(data_dir() + "/groups/g15.json");
  std::size_t total = 0;
  for (auto const &o : hyperplane_orbits(G15)) total += o.reflections.size();
  CHECK(total == G15.reflections().size());
}

TEST_CASE("normal reflection subgroups") {
  ReflectionGroup C6 = make_cyclic(6);
  auto c6 = normal_reflection_subgroups(C6);
  std::set<int> orders;
  for (auto const &N : c6) orders.insert(N.order());
  CHECK(orders == std::set<int>{2, 3, 6});

  auto g422 = proper_nontrivial(make_imprimitive(4, 2, 2));
  CHECK(g422.size() == 6);
  CHECK(count_order(g422, 8) == 3);
  CHECK(count_order(g422, 4) == 3);

  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G15 = resolve_group(spec);
  auto g15 = proper_nontrivial(G15);
  CHECK(g15.size() == 6);
  NormalSubgroupHandle N12 = select_normal(G15, spec, "g12");
  CHECK(N12.order() == 48);
  CHECK(std::any_of(g15.begin(), g15.end(), [&](auto const &N) { return N.members == N12.members; }));

  for (int a = 1; a <= 12; ++a) {
    int divisors = 0;
    for (int d = 2; d <= a; ++d) divisors += a % d == 0;
    CHECK(int(normal_reflection_subgroups(make_cyclic(a)).size()) == divisors);
  }
}

TEST_CASE("normality and cosets") {
  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G = resolve_group(spec);
  NormalSubgroupHandle N = select_normal(G, spec, "g12");
  CHECK(normality_exhaustive(N));
  CHECK(N.quotient_order() == 6);
  std::vector<int> seen(G.order(), 0);
  for (int c = 0; c < N.quotient_order(); ++c)
    for (int g : N.coset(c)) {
      ++seen[g];
      CHECK(N.coset_of[g] == c);
    }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
  CHECK(select_normal(G, spec, "whole").quotient_order() == 1);
  ReflectionGroup C6 = make_cyclic(6);
  GroupSpec c6 = parse_group_spec("C6");
  CHECK(select_normal(C6, c6, "C_2").quotient_order() == 3);
  // a single non-normal reflection class is rejected
  ReflectionGroup S3 = make_imprimitive(1, 1, 3);
  CHECK_THROWS(make_normal_subgroup(S3, {S3.reflections().front()}));
}

TEST_CASE("imprimitive containment") {
  for (int ab : {2, 4, 6})
    for (int b = 1; b <= ab; ++b) {
      if (ab % b) continue;
      int a = ab / b;
      for (int r = 2; r <= 3; ++r) {
        ReflectionGroup G = make_imprimitive(ab, b, r);
        for (int d = 1; d <= a; ++d) {
          if (a % d) continue;
          ReflectionGroup M = make_imprimitive(ab, d * b, r);
          bool inside = true;
          for (int g = 0; g < M.order(); ++g) inside = inside && G.index_of(M.element(g)) >= 0;
          CHECK(inside);
        }
      }
    }
}

TEST_CASE("symmetric powers") {
  CHECK(sym_power_action(CycMatrix::identity(3), 4).is_identity());
  CHECK(sym_power_action(CycMatrix::identity(3), 4).rows() == 15);
  CHECK(sym_power_action(CycMatrix::diag({cyc_root(6, 1)}), 4) == CycMatrix::diag({cyc_root(6, 4)}));
  ReflectionGroup G = load_group(data_dir() + "/groups/g12.json");
  auto rng = test::rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int a = int(rng() % G.order()), b = int(rng() % G.order()), d = 1 + int(rng() % 6);
    CHECK(sym_power_action(G.element(G.mul(a, b)), d) ==
          mat_mul(sym_power_action(G.element(a), d), sym_power_action(G.element(b), d)));
    SymImages ser(G.element(a), d, kernels::Exec::serial), par(G.element(a), d, kernels::Exec::parallel);
    CHECK(ser.matrix() == par.matrix());
  }
}

}

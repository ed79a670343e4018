// Serial reference vs OpenMP path for each parallel kernel.  Arg 0 is the
// serial path, arg 1 the parallel one.
#include <benchmark/benchmark.h>

#include <random>

#include "reflekt/catalog.hpp"
#include "reflekt/invariants.hpp"
#include "reflekt/theorems.hpp"

using namespace reflekt;

namespace {

kernels::Exec exec_of(benchmark::State const &state) {
  return state.range(0) ? kernels::Exec::parallel : kernels::Exec::serial;
}

CycMatrix dense_matrix(int rows, int cols, int m) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  CycMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Cyclotomic c;
      for (int k = 0; k < euler_phi(m); ++k) c += Cyclotomic(coef(rng)) * cyc_root(m, k);
      a(i, j) = c;
    }
  return a;
}

void BM_rref(benchmark::State &state) {
  CycMatrix a = dense_matrix(46, 48, 3);
  for (auto _ : state) {
    CycMatrix b = a;
    benchmark::DoNotOptimize(kernels::rref(b, exec_of(state)));
  }
}

void BM_averaged_molien(benchmark::State &state) {
  ReflectionGroup G = resolve_group(parse_group_spec("g28"));
  std::vector<EigenMultiset> eig;
  for (int g = 0; g < G.order(); ++g) eig.push_back(G.eigen(g));
  for (auto _ : state) benchmark::DoNotOptimize(averaged_molien(eig, nullptr, 30, exec_of(state)));
}

void BM_sum_side(benchmark::State &state) {
  GroupSpec spec = parse_group_spec("g15");
  ReflectionGroup G = resolve_group(spec);
  NormalPair P(G, select_normal(G, spec, "g12"));
  GaloisAuto s = resolve_sigma(G, spec, 5);
  sum_side(P, s); // warm the fix_E cache out of the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(sum_side(P, s, exec_of(state)));
}

} // namespace

BENCHMARK(BM_rref)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_averaged_molien)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sum_side)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

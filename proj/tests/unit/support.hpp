#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "reflekt/cyclotomic.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt::test {

// REFLEKT_SEED pins the run; otherwise a fresh seed, printed once so a
// failure can be replayed
inline std::uint64_t seed() {
  static std::uint64_t const s = [] {
    std::uint64_t v;
    if (char const *env = std::getenv("REFLEKT_SEED"))
      v = std::stoull(env);
    else
      v = std::random_device{}() * 0x9e3779b97f4a7c15ull ^ std::random_device{}();
    std::cerr << "REFLEKT_SEED=" << v << "\n";
    return v;
  }();
  return s;
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x2545f4914f6cdd1dull)); }

inline Rational small_rational(std::mt19937_64 &g) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return Rational(num(g), den(g));
}

inline Cyclotomic random_cyc(std::mt19937_64 &g, int m) {
  int phi = euler_phi(m);
  Cyclotomic::Coeffs c;
  for (int i = 0; i < phi; ++i) c.push_back(small_rational(g));
  return Cyclotomic::from_basis(m, c);
}

inline CycMatrix random_matrix(std::mt19937_64 &g, int rows, int cols, int m) {
  CycMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = random_cyc(g, m);
  return a;
}

} // namespace reflekt::test

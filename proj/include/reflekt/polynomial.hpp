#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "reflekt/kernels.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt {

// Degree-d monomials in r variables, graded lex with x1 > ... > xr.
struct MonomialBasis {
  int r = 0, d = 0;
  std::vector<std::vector<int>> exps;
  std::unordered_map<std::uint64_t, int> index;

  int size() const { return int(exps.size()); }
  int index_of(std::vector<int> const &e) const;
  static std::uint64_t pack(std::vector<int> const &e);
};

MonomialBasis const &monomial_basis(int r, int d);

// Homogeneous polynomial of degree d as a dense coefficient vector on
// monomial_basis(r, d).
CycVector poly_mul(CycVector const &f, int df, CycVector const &g, int dg, int r);
CycVector monomial_vector(int r, std::vector<int> const &e);

using SparseVec = std::vector<std::pair<int, Cyclotomic>>;

// Images of the degree-d monomials under the substitution
// x_j -> sum_i P(i,j) x_i, where P is the matrix of g on V*.
class SymImages {
public:
  SymImages(CycMatrix const &P, int d, kernels::Exec exec = kernels::Exec::parallel);
  int degree() const { return d_; }
  SparseVec const &image(int monomial) const { return img_[monomial]; }
  CycVector apply(CycVector const &f) const;
  CycMatrix matrix() const;

private:
  int r_, d_;
  std::vector<SparseVec> img_;
};

CycMatrix sym_power_action(CycMatrix const &P, int d);

// alpha! used by the unitarily invariant inner product on S(V*)_d
Rational monomial_weight(std::vector<int> const &e);

std::string variable_name(int r, int i);
std::string render_poly(CycVector const &f, int r, int d);

} // namespace reflekt

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "reflekt/group.hpp"
#include "reflekt/polynomial.hpp"
#include "reflekt/series.hpp"

namespace reflekt {

// One graded piece of a subquotient of S(V*) (tensor == false) or of
// S(V*) (x) (V^sigma)* (tensor == true, ambient index alpha * r + j).
struct GradedPiece {
  int degree = 0;
  Subspace space;
  std::vector<CycMatrix> coset_action;     // per coset of N, column convention
  std::vector<CycMatrix> generator_action; // per generator of G
};

struct GradedSpace {
  std::string label;
  int rank = 0;
  bool tensor = false;
  std::int64_t twist = 1;
  std::vector<GradedPiece> pieces;

  int total_dim() const;
  // degree of each basis vector in piece order
  std::vector<int> grading() const;
  CycMatrix coset_matrix(int coset) const;
  CycMatrix generator_matrix(int k) const;
  std::vector<std::string> render() const;
};

struct QuotientModule {
  GradedSpace space; // E*
  DegreeMultiset degrees;
};

struct OSSpace {
  GradedSpace space; // (U^N_sigma)*
  ExponentMultiset exponents;
  GaloisAuto sigma;
};

// S(V*)^N degree by degree, cached.  Safe to query from several threads.
class InvariantCache {
public:
  InvariantCache(ReflectionGroup const &G, NormalSubgroupHandle const &N);
  Subspace const &at(int d);

private:
  ReflectionGroup const &G_;
  std::vector<CycMatrix> gens_;
  std::mutex mu_;
  std::map<int, std::unique_ptr<Subspace>> cache_;
};

// joint fixed space of the generators on S(V*)_d
Subspace invariant_subspace(std::vector<CycMatrix> const &gens, int d);
Subspace invariant_subspace(ReflectionGroup const &G, NormalSubgroupHandle const &N, int d);

// unitarily invariant form <x^a, x^b> = a! delta_ab
Cyclotomic fischer_form(CycVector const &f, CycVector const &g, int r, int d);
// vectors of W orthogonal to all of D
Subspace fischer_complement(Subspace const &W, std::vector<CycVector> const &D, int r, int d);

// f * x^m for a monomial exponent vector m
CycVector mul_monomial(CycVector const &f, int df, std::vector<int> const &m, int r);

// action of the V*-matrix P on a piece, in the piece's coordinates
CycMatrix piece_action(GradedPiece const &piece, CycMatrix const &P, bool tensor, std::int64_t s);

QuotientModule build_E(ReflectionGroup const &G, NormalSubgroupHandle const &N, DegreeMultiset const &dN,
                       InvariantCache &inv);

// coefficient of q^e in prod (1 - q^d_i) / (1 - q)^r
std::int64_t coinvariant_dimension(DegreeMultiset const &d, int e);
Subspace coinvariant_piece(QuotientModule const &E, int r, int e);

class CoinvariantCache {
public:
  CoinvariantCache(QuotientModule const &E, int r) : E_(E), r_(r) {}
  Subspace const &at(int e);

private:
  QuotientModule const &E_;
  int r_;
  std::mutex mu_;
  std::map<int, std::unique_ptr<Subspace>> cache_;
};

OSSpace build_UNsigma(ReflectionGroup const &G, NormalSubgroupHandle const &N, QuotientModule const &E,
                      GaloisAuto const &sigma, CoinvariantCache &coinv);

// fills coset_action / generator_action of every piece
void attach_actions(GradedSpace &space, ReflectionGroup const &G, NormalSubgroupHandle const &N);

} // namespace reflekt

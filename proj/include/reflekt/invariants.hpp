#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/group.hpp"
#include "reflekt/modspace.hpp"
#include "reflekt/series.hpp"

namespace reflekt {

// class function on a list of elements (group elements or cosets)
struct CharacterTable {
  std::string label;
  std::vector<Cyclotomic> values;
};

// 1/det(1 - x g) from the eigenvalues of g
TruncSeries inverse_det_series(EigenMultiset const &e, int T);

// (1/|set|) sum_i w_i / det(1 - x g_i); w = nullptr means all ones.  The
// parallel path buckets equal eigen multisets; the serial reference does not.
TruncSeries averaged_molien(std::vector<EigenMultiset> const &eig, std::vector<Cyclotomic> const *w, int T,
                            kernels::Exec exec = kernels::Exec::parallel);

// default truncation: sum of the r largest divisors of n
int molien_truncation(std::int64_t n, int r);
DegreeMultiset degrees_of(std::vector<EigenMultiset> const &eig, int r);

TruncSeries molien(ReflectionGroup const &G, int T = -1);
DegreeMultiset degrees(ReflectionGroup const &G);

// exponents from the character of M* (no conjugation applied)
ExponentMultiset fake_degree_dual(std::vector<EigenMultiset> const &eig, DegreeMultiset const &d,
                                  std::vector<Cyclotomic> const &chi_dual);
// exponents of M given the character of M over G
ExponentMultiset fake_degree(ReflectionGroup const &G, DegreeMultiset const &d, CharacterTable const &chi);

// sum of e_i(M) minus e_1 of the top exterior power; both characters of M*
int amenability_defect(std::vector<EigenMultiset> const &eig, DegreeMultiset const &d,
                       std::vector<Cyclotomic> const &chi_dual, std::vector<Cyclotomic> const &det_dual);

Cyclotomic sigma_trace(EigenMultiset const &e, std::int64_t s);
Cyclotomic sigma_det(EigenMultiset const &e, std::int64_t s);

// s in [1, ab) lifted to an exponent coprime to the working conductor m,
// congruent to s mod base
GaloisAuto lift_sigma(int m, std::int64_t s, std::int64_t base);
// s in [1, m) coprime to m, or {1} when m <= 2
std::vector<std::int64_t> valid_sigmas(int m);

struct SpectrumEntry {
  int order = 1;
  int residue = 0; // eigenvalue zeta_order^residue
  int degree = 0;
  bool is_one() const { return residue == 0; }
};

struct CosetSpectrum {
  int coset = 0;
  std::vector<SpectrumEntry> E, U;
};

struct QuotientInvariants {
  DegreeMultiset degrees_H;
  std::vector<int> block_degree;         // d for each E-block, ascending
  std::vector<DegreeMultiset> block_H;   // H-degrees coming from each block
  std::vector<ExponentMultiset> e_H;     // e^H(E^sigma_d) per block
  std::vector<ExponentMultiset> e_G;     // e^G(E^sigma_d) per block
  bool square_diagonal = false;          // union of block_H equals degrees_H
};

// G with a normal reflection subgroup N; builds E, C_N pieces and U^N_sigma
// lazily.  Not thread-safe; one per task.
class NormalPair {
public:
  NormalPair(ReflectionGroup const &G, NormalSubgroupHandle N);

  ReflectionGroup const &G() const { return G_; }
  NormalSubgroupHandle const &N() const { return N_; }
  int rank() const { return G_.rank(); }
  int working_conductor() const { return G_.working_conductor(); }
  GaloisAuto sigma(std::int64_t s) const;

  DegreeMultiset const &degrees_G();
  DegreeMultiset const &degrees_N();
  std::vector<EigenMultiset> const &eigen_G() const { return eig_G_; }
  std::vector<EigenMultiset> const &eigen_N() const { return eig_N_; }

  InvariantCache &invariants() { return *inv_; }
  QuotientModule const &E();
  CoinvariantCache &coinvariants();
  OSSpace const &U(GaloisAuto const &sigma);

  // graded character of (U^N_sigma)* on a coset from V-data alone, as a
  // polynomial in y (index = degree)
  std::vector<Cyclotomic> U_character_route(GaloisAuto const &sigma, int coset);
  // explicit exponents checked against the character route
  ExponentMultiset twisted_exponents_of_N(GaloisAuto const &sigma);

  int fix_E(int g);
  int fix_U(GaloisAuto const &sigma, int g);
  CosetSpectrum coset_spectrum(GaloisAuto const &sigma, int coset);
  // (1/|N|) sum_n prod_e det(1 + u y^e ng | U*_e) / det(1 - x ng | V*)
  UPolyU twisted_poincare(GaloisAuto const &sigma, int coset, int T);
  // prod (1 + eps(U) u y^e) / (1 - eps(E) x^d) from the spectrum
  UPolyU twisted_poincare_closed(GaloisAuto const &sigma, int coset, int T);
  // (1/|N|) sum_n det(1 + u ng | (V^sigma)*) / det(1 - x ng | V*)
  UPolyU twisted_os_series(GaloisAuto const &sigma, int coset, int T);

  QuotientInvariants quotient_invariants(GaloisAuto const &sigma);
  std::vector<EigenMultiset> const &eigen_H();
  // e^G of each U-block, in piece order
  std::vector<ExponentMultiset> U_block_exponents(GaloisAuto const &sigma);
  ExponentMultiset exponents_G(GaloisAuto const &sigma);
  // (e^N, e^G(U)) pairs sorted by (e^G(U), e^N)
  std::vector<std::pair<int, int>> canonical_pairs(GaloisAuto const &sigma);

private:
  std::vector<Cyclotomic> coset_chars(GaloisAuto const &sigma, int piece, bool of_U);
  std::vector<int> coset_elements(int coset) const;

  ReflectionGroup const &G_;
  NormalSubgroupHandle N_;
  std::vector<EigenMultiset> eig_G_, eig_N_;
  std::optional<DegreeMultiset> dG_, dN_;
  std::unique_ptr<InvariantCache> inv_;
  std::unique_ptr<QuotientModule> E_;
  std::unique_ptr<CoinvariantCache> coinv_;
  std::map<std::int64_t, std::unique_ptr<OSSpace>> U_;
  std::vector<EigenMultiset> eig_H_;
  std::vector<std::vector<EigenMultiset>> eig_E_piece_; // [piece][coset]
  std::map<std::int64_t, std::vector<std::vector<EigenMultiset>>> eig_U_piece_;
};

} // namespace reflekt

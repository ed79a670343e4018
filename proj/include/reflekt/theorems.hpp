#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reflekt/catalog.hpp"
#include "reflekt/invariants.hpp"

namespace reflekt {

inline constexpr char kReportSchema[] = "reflekt.report/1";

struct VerificationReport {
  std::string identity;
  std::string group;
  std::string subgroup;
  std::int64_t sigma = 1;
  std::string lhs, rhs;
  bool pass = false;
  double millis = 0;
};

nlohmann::json report_json(VerificationReport const &r);

// sigma_s lifted to the working conductor; for G(ab,b,r) s is read mod ab
GaloisAuto resolve_sigma(ReflectionGroup const &G, GroupSpec const &spec, std::int64_t s);
// modulus the exponent s is read in: ab for the families, the working
// conductor for data-file groups
std::int64_t sigma_base(ReflectionGroup const &G, GroupSpec const &spec);
// the s to sweep for "all"
std::vector<std::int64_t> sigma_range(ReflectionGroup const &G, GroupSpec const &spec);

// prod over eigenvalues lambda != 1 of (1 - lambda^s)/(1 - lambda); e holds
// V* eigenvalues, on_V flips them to the V side
Cyclotomic twist_ratio(EigenMultiset const &e, std::int64_t s, bool on_V);

// e^G(V^sigma) from the fake degree of (V^sigma)*
ExponentMultiset twisted_exponents(ReflectionGroup const &G, GaloisAuto const &sigma);

// sum over g of twist_ratio(g on V) q^fix_V(g) t^fix_E(g)
BivarPoly sum_side(NormalPair &P, GaloisAuto const &sigma, kernels::Exec exec = kernels::Exec::parallel);
// sum over g of twist_ratio(g on V) q^fix_V(g)
BivarPoly os_sum(ReflectionGroup const &G, GaloisAuto const &sigma);
std::vector<std::pair<int, int>> product_pairs(NormalPair &P, GaloisAuto const &sigma);
BivarPoly product_side(NormalPair &P, GaloisAuto const &sigma);

// sum over n in N of twist_ratio(ng on V*) q^fix(ng) t^fix_E(g)
CycBivar coset_slice(NormalPair &P, GaloisAuto const &sigma, int coset);
// closed form of the coset's specialized limit from its eigenvalue data
CycBivar coset_limit(NormalPair &P, GaloisAuto const &sigma, int coset);

struct ElementContribution {
  int element = 0;
  int coset = 0;
  Cyclotomic ratio; // twist_ratio on V*
  int fix_V = 0;
  // per-element limit of the graded OS ratio; empty when it diverges
  std::optional<CycBivar> limit;
};
std::vector<ElementContribution> element_contributions(NormalPair &P, GaloisAuto const &sigma);

// Rows for the degree/exponent identities, in the order they are printed.
struct NumerologyRow {
  int d = 0, eH = 0, eGE = 0, dH = 0;
};
struct Numerology {
  std::vector<NumerologyRow> rows;            // sorted by (e^G(E), d)
  std::vector<std::pair<int, int>> pairs;     // (e^N, e^G(U)) canonical order
  ExponentMultiset eGV;                       // sorted
  DegreeMultiset dG;
  bool square_diagonal = false;
  // "(a,b)+(c,d)=(e,f)" style renderings
  std::string line_exponents() const;
  std::string line_E() const;
  std::string line_degrees() const;
  bool exponents_hold() const;
  bool E_holds() const;
  bool degrees_hold() const;
};
Numerology numerology(NormalPair &P, GaloisAuto const &sigma);

VerificationReport verify_main(NormalPair &P, GaloisAuto const &sigma);
VerificationReport verify_orlik_solomon(ReflectionGroup const &G, GaloisAuto const &sigma);
VerificationReport verify_shephard_todd(ReflectionGroup const &G);
VerificationReport verify_numerology(NormalPair &P, GaloisAuto const &sigma);
VerificationReport verify_coset_identities(NormalPair &P, GaloisAuto const &sigma);
VerificationReport verify_derivative_recovery(NormalPair &P, GaloisAuto const &sigma);
// C_a over C_d: every exponent against its ceiling formula
VerificationReport verify_cyclic_closed_forms(NormalPair &P, int a, int d, std::int64_t s);

// G(ab,b,r) closed-form V^sigma exponents
ExponentMultiset infinite_exponents_closed(int ab, int b, int r, std::int64_t s);
VerificationReport verify_infinite_exponents(ReflectionGroup const &G, GroupSpec const &spec, std::int64_t s);

// labels of the predicted subgroups of G(ab,b,r) with the same elements as N
// ("(C_2)^3", "G(6,3,3)", "G(3,1,2)'", ...)
std::vector<std::string> family_labels(ReflectionGroup const &G, GroupSpec const &spec, NormalSubgroupHandle const &N);
// U^N_sigma against the fake tensor power of E that the family predicts, one
// report per matching label
std::vector<VerificationReport> verify_fake_tensor(NormalPair &P, GroupSpec const &spec, std::int64_t s);
// (C_d)^r: |H| and the degrees of H against G(eb,b,r)
std::optional<VerificationReport> verify_quotient_shape(NormalPair &P, GroupSpec const &spec);
// all of the above for every predicted normal subgroup of G(ab,b,r) at s
std::vector<VerificationReport> verify_infinite_family(int ab, int b, int r, std::int64_t s);

// one row of the g15 over g12 table: | s | d^N | e^H | e^G(E) | e^N | e^G(U) | e^G(V) | factors |
std::string table2_row(NormalPair &P, GaloisAuto const &sigma, std::int64_t s);
std::string table2_header();
std::string factor_string(std::vector<std::pair<int, int>> const &pairs);

} // namespace reflekt

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "reflekt/rational.hpp"

namespace reflekt {

// Field data for Q(zeta_m): phi(m), Phi_m, and x^k mod Phi_m for 0 <= k < m.
struct FieldData {
  int m = 1;
  int phi = 1;
  std::vector<std::int64_t> cyclopoly; // Phi_m, low degree first
  std::vector<std::vector<std::pair<int, std::int64_t>>> reduce;
};

FieldData const &field(int m);
std::vector<std::int64_t> cyclotomic_polynomial(int m);
int euler_phi(int m);
std::int64_t lcm_int(std::int64_t a, std::int64_t b);

// Element of Q(zeta_m) on the power basis 1, z, ..., z^{phi(m)-1} reduced
// mod Phi_m.  Zero is conductor 1 with no coefficients; any element whose
// only nonzero coefficient is the constant one is stored at conductor 1.
class Cyclotomic {
public:
  using Coeffs = boost::container::small_vector<Rational, 4>;

  Cyclotomic() = default;
  Cyclotomic(Rational r);
  Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}
  Cyclotomic(int n) : Cyclotomic(Rational(n)) {}

  // zeta_m^k
  static Cyclotomic root(int m, std::int64_t k);
  // sum of c * zeta_m^k, any k
  static Cyclotomic from_terms(int m, std::vector<std::pair<std::int64_t, Rational>> const &terms);
  // coefficients already on the power basis of conductor m
  static Cyclotomic from_basis(int m, Coeffs c);

  int conductor() const { return m_; }
  Coeffs const &coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return m_ == 1; }
  bool is_one() const { return m_ == 1 && c_.size() == 1 && c_[0].is_one(); }
  Rational rational() const; // throws unless rational

  Cyclotomic lifted(int m) const;
  Cyclotomic galois(std::int64_t s) const;
  Cyclotomic conj() const;
  Cyclotomic inverse() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator/(Cyclotomic const &a, Cyclotomic const &b);
  Cyclotomic &operator+=(Cyclotomic const &b);
  Cyclotomic &operator-=(Cyclotomic const &b);
  Cyclotomic &operator*=(Cyclotomic const &b) { return *this = *this * b; }
  Cyclotomic &operator/=(Cyclotomic const &b) { return *this = *this / b; }
  friend bool operator==(Cyclotomic const &a, Cyclotomic const &b);

  Cyclotomic pow(std::int64_t e) const;

  // power-basis coefficients at conductor m (m must be a multiple of conductor())
  std::string key(int m) const;
  // sparse triples [k, num, den] at the current conductor
  std::vector<std::array<std::string, 3>> triples() const;
  std::string str() const;
  std::complex<double> to_complex() const;

private:
  void canonicalize();

  int m_ = 1;
  Coeffs c_;
};

std::ostream &operator<<(std::ostream &os, Cyclotomic const &a);

inline Cyclotomic cyc_root(int m, std::int64_t k) { return Cyclotomic::root(m, k); }

struct GaloisAuto {
  int conductor = 1;
  std::int64_t exponent = 1;

  GaloisAuto() = default;
  GaloisAuto(int m, std::int64_t s);
  GaloisAuto compose(GaloisAuto const &o) const; // this after o
};

// applies sigma_s; a's conductor must divide sigma's (a is lifted otherwise
// when the exponent stays coprime)
Cyclotomic galois_apply(GaloisAuto const &sigma, Cyclotomic const &a);

// (1 - lambda^s) / (1 - lambda) for lambda = zeta_o^j != 1, s >= 1
Cyclotomic geometric_ratio(int o, std::int64_t j, std::int64_t s);
// same thing from a general root of unity via field division
Cyclotomic geometric_ratio(Cyclotomic const &lambda, GaloisAuto const &sigma);

} // namespace reflekt

#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/cyclotomic.hpp"

namespace reflekt {

// sorted multisets of degrees / exponents
using DegreeMultiset = std::vector<int>;
using ExponentMultiset = std::vector<int>;

std::string join_ints(std::vector<int> const &v, char const *sep = ",");

struct DeconvolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Power series in x truncated after x^T.
class TruncSeries {
public:
  TruncSeries() = default;
  explicit TruncSeries(int T) : c_(T + 1) {}
  static TruncSeries one(int T);
  static TruncSeries from_poly(std::vector<Cyclotomic> const &p, int T);

  int trunc() const { return int(c_.size()) - 1; }
  Cyclotomic &operator[](int k) { return c_[k]; }
  Cyclotomic const &operator[](int k) const { return c_[k]; }
  std::vector<Cyclotomic> const &coeffs() const { return c_; }

  TruncSeries operator+(TruncSeries const &o) const;
  TruncSeries operator-(TruncSeries const &o) const;
  TruncSeries operator*(TruncSeries const &o) const;
  TruncSeries &operator+=(TruncSeries const &o);
  TruncSeries scaled(Cyclotomic const &c) const;
  TruncSeries inverse() const;
  TruncSeries truncated(int T) const;
  // multiply by x^k
  TruncSeries shifted(int k) const;
  friend bool operator==(TruncSeries const &a, TruncSeries const &b) { return a.c_ == b.c_; }

  bool is_rational() const;
  std::string str(char var = 'x') const;

private:
  std::vector<Cyclotomic> c_;
};

inline TruncSeries series_inv(TruncSeries const &a) { return a.inverse(); }
inline TruncSeries series_mul(TruncSeries const &a, TruncSeries const &b) { return a * b; }
inline TruncSeries series_add(TruncSeries const &a, TruncSeries const &b) { return a + b; }

// expansion of prod 1/(1 - x^d) up to x^T
TruncSeries degree_product_series(DegreeMultiset const &d, int T);
DegreeMultiset deconvolve_degrees(TruncSeries const &f, int r);

// Polynomial in u and a grading marker y with TruncSeries coefficients in x.
// Terms are keyed (u-degree, y-degree).
class UPolyU {
public:
  using Key = std::pair<int, int>;

  UPolyU() = default;
  explicit UPolyU(int T) : T_(T) {}

  int trunc() const { return T_; }
  std::map<Key, TruncSeries> const &terms() const { return terms_; }
  void add(int u, int y, TruncSeries const &s);
  // (sum of c * u^p y^e) * s
  static UPolyU times(std::map<Key, Cyclotomic> const &poly, TruncSeries const &s);
  UPolyU &operator+=(UPolyU const &o);
  UPolyU scaled(Cyclotomic const &c) const;
  // y -> x: the y-grading is moved into x
  UPolyU specialize_y_to_x() const;
  friend bool operator==(UPolyU const &a, UPolyU const &b);
  std::string str() const;

private:
  void prune();
  int T_ = 0;
  std::map<Key, TruncSeries> terms_;
};

inline std::string coeff_str(Rational const &r) { return r.str(); }
inline std::string coeff_str(Cyclotomic const &c) { return c.is_rational() ? c.str() : "(" + c.str() + ")"; }
inline bool coeff_negative(Rational const &r) { return r.sign() < 0; }
inline bool coeff_negative(Cyclotomic const &c) { return c.is_rational() && c.rational().sign() < 0; }

// Polynomial in q and t.
template <class C> class BasicBivar {
public:
  using Key = std::pair<int, int>; // (q-degree, t-degree)

  void add_term(int q, int t, C const &c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace({q, t}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  C coeff(int q, int t) const {
    auto it = terms_.find({q, t});
    return it == terms_.end() ? C() : it->second;
  }
  std::map<Key, C> const &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BasicBivar &operator+=(BasicBivar const &o) {
    for (auto const &[k, v] : o.terms_) add_term(k.first, k.second, v);
    return *this;
  }
  friend BasicBivar operator+(BasicBivar a, BasicBivar const &b) { return a += b; }
  friend BasicBivar operator-(BasicBivar a, BasicBivar const &b) {
    for (auto const &[k, v] : b.terms_) a.add_term(k.first, k.second, -v);
    return a;
  }
  friend BasicBivar operator*(BasicBivar const &a, BasicBivar const &b) {
    BasicBivar c;
    for (auto const &[k1, v1] : a.terms_)
      for (auto const &[k2, v2] : b.terms_) c.add_term(k1.first + k2.first, k1.second + k2.second, v1 * v2);
    return c;
  }
  friend bool operator==(BasicBivar const &a, BasicBivar const &b) { return a.terms_ == b.terms_; }

  // (1/k!) d^k/dt^k, i.e. shifts t-degree down by k with binomial weights
  BasicBivar hasse_t(int k) const {
    BasicBivar out;
    for (auto const &[key, v] : terms_) {
      if (key.second < k) continue;
      out.add_term(key.first, key.second - k, v * C(binomial(key.second, k)));
    }
    return out;
  }
  BasicBivar at_t_one() const {
    BasicBivar out;
    for (auto const &[key, v] : terms_) out.add_term(key.first, 0, v);
    return out;
  }
  BasicBivar at_q_one() const {
    BasicBivar out;
    for (auto const &[key, v] : terms_) out.add_term(0, key.second, v);
    return out;
  }
  BasicBivar scaled(C const &c) const {
    BasicBivar out;
    for (auto const &[key, v] : terms_) out.add_term(key.first, key.second, v * c);
    return out;
  }

  // terms ordered by (t-degree, q-degree) descending
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, C const *>> order;
    for (auto const &[k, v] : terms_) order.push_back({k, &v});
    std::sort(order.begin(), order.end(), [](auto const &x, auto const &y) {
      if (x.first.second != y.first.second) return x.first.second > y.first.second;
      return x.first.first > y.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto const &[k, vp] : order) {
      C const &v = *vp;
      bool neg = coeff_negative(v);
      C a = neg ? -v : v;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool constant = k.first == 0 && k.second == 0;
      if (!(a == C(1)) || constant) os << coeff_str(a);
      if (k.first > 0) os << "q" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
      if (k.second > 0) os << "t" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
    return os.str();
  }

private:
  static std::int64_t binomial(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  std::map<Key, C> terms_;
};

using BivarPoly = BasicBivar<Rational>;
using CycBivar = BasicBivar<Cyclotomic>;

// fails hard if a coefficient is not rational
BivarPoly to_rational(CycBivar const &p);
BivarPoly linear_factor_product(std::vector<std::pair<int, int>> const &pairs);
bool bivar_factor_check(BivarPoly const &p, std::vector<std::pair<int, int>> const &pairs);
// prod (q + a_i) as a polynomial in q
BivarPoly q_product(std::vector<int> const &a);
// prod (t + a_i)
BivarPoly t_product(std::vector<int> const &a);

} // namespace reflekt

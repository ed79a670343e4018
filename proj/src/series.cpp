#include "reflekt/series.hpp"

#include <algorithm>

#include "reflekt/matrix.hpp"

namespace reflekt {

std::string join_ints(std::vector<int> const &v, char const *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

TruncSeries TruncSeries::one(int T) {
  TruncSeries s(T);
  s[0] = Cyclotomic(1);
  return s;
}

TruncSeries TruncSeries::from_poly(std::vector<Cyclotomic> const &p, int T) {
  TruncSeries s(T);
  for (int k = 0; k < int(p.size()) && k <= T; ++k) s[k] = p[k];
  return s;
}

TruncSeries TruncSeries::operator+(TruncSeries const &o) const {
  TruncSeries r = *this;
  r += o;
  return r;
}

TruncSeries &TruncSeries::operator+=(TruncSeries const &o) {
  if (o.trunc() < trunc()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!o.c_[k].is_zero()) c_[k] += o.c_[k];
  return *this;
}

TruncSeries TruncSeries::operator-(TruncSeries const &o) const { return *this + o.scaled(Cyclotomic(-1)); }

TruncSeries TruncSeries::operator*(TruncSeries const &o) const {
  int T = std::min(trunc(), o.trunc());
  TruncSeries r(T);
  std::vector<int> nz;
  for (int k = 0; k <= T; ++k)
    if (!o.c_[k].is_zero()) nz.push_back(k);
  for (int i = 0; i <= T; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j : nz) {
      if (i + j > T) break;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  return r;
}

TruncSeries TruncSeries::scaled(Cyclotomic const &c) const {
  TruncSeries r = *this;
  for (auto &v : r.c_)
    if (!v.is_zero()) v *= c;
  return r;
}

TruncSeries TruncSeries::inverse() const {
  if (c_.empty() || c_[0].is_zero()) throw DivisionByZero();
  int T = trunc();
  TruncSeries b(T);
  Cyclotomic inv0 = c_[0].inverse();
  std::vector<int> nz;
  for (int k = 1; k <= T; ++k)
    if (!c_[k].is_zero()) nz.push_back(k);
  b[0] = inv0;
  for (int n = 1; n <= T; ++n) {
    Cyclotomic s;
    for (int k : nz) {
      if (k > n) break;
      if (!b[n - k].is_zero()) s += c_[k] * b[n - k];
    }
    if (!s.is_zero()) b[n] = -(s * inv0);
  }
  return b;
}

TruncSeries TruncSeries::truncated(int T) const {
  TruncSeries r(T);
  for (int k = 0; k <= T && k <= trunc(); ++k) r[k] = c_[k];
  return r;
}

TruncSeries TruncSeries::shifted(int k) const {
  TruncSeries r(trunc());
  for (int i = 0; i + k <= trunc(); ++i) r[i + k] = c_[i];
  return r;
}

bool TruncSeries::is_rational() const {
  for (auto const &v : c_)
    if (!v.is_rational()) return false;
  return true;
}

std::string TruncSeries::str(char var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= trunc(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeff_str(c_[k]);
    if (k > 0) os << "*" << var << (k > 1 ? "^" + std::to_string(k) : "");
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << trunc() + 1 << ")";
  return os.str();
}

TruncSeries degree_product_series(DegreeMultiset const &d, int T) {
  TruncSeries s = TruncSeries::one(T);
  for (int deg : d) {
    // multiply by 1/(1 - x^deg): running sum with stride deg
    for (int n = deg; n <= T; ++n)
      if (!s[n - deg].is_zero()) s[n] += s[n - deg];
  }
  return s;
}

DegreeMultiset deconvolve_degrees(TruncSeries const &f, int r) {
  if (!f[0].is_one()) throw DeconvolutionError("Molien series must start with 1");
  TruncSeries p = f.inverse();
  int T = p.trunc();
  DegreeMultiset out;
  for (int d = 1; d <= T; ++d) {
    if (p[d].is_zero()) continue;
    if (!p[d].is_rational() || !p[d].rational().is_integer() || p[d].rational().sign() > 0)
      throw DeconvolutionError("not a product of (1 - x^d): coefficient " + p[d].str() + " at degree " +
                               std::to_string(d));
    std::int64_t mult = -p[d].rational().to_int64();
    for (std::int64_t i = 0; i < mult; ++i) {
      out.push_back(d);
      for (int n = d; n <= T; ++n)
        if (!p[n - d].is_zero()) p[n] += p[n - d];
    }
    if (!p[d].is_zero()) throw ArithmeticInvariantError("deconvolution left a residue");
    if (int(out.size()) > r) break;
  }
  if (int(out.size()) != r)
    throw DeconvolutionError("found " + std::to_string(out.size()) + " degrees, expected " + std::to_string(r));
  return out;
}

void UPolyU::add(int u, int y, TruncSeries const &s) {
  auto it = terms_.find({u, y});
  if (it == terms_.end())
    terms_.emplace(Key{u, y}, s.truncated(T_));
  else
    it->second += s;
  prune();
}

UPolyU UPolyU::times(std::map<Key, Cyclotomic> const &poly, TruncSeries const &s) {
  UPolyU out(s.trunc());
  for (auto const &[k, c] : poly)
    if (!c.is_zero()) out.add(k.first, k.second, s.scaled(c));
  return out;
}

UPolyU &UPolyU::operator+=(UPolyU const &o) {
  if (terms_.empty() && T_ == 0) T_ = o.T_;
  for (auto const &[k, s] : o.terms_) add(k.first, k.second, s);
  return *this;
}

UPolyU UPolyU::scaled(Cyclotomic const &c) const {
  UPolyU out(T_);
  for (auto const &[k, s] : terms_) out.add(k.first, k.second, s.scaled(c));
  return out;
}

UPolyU UPolyU::specialize_y_to_x() const {
  UPolyU out(T_);
  for (auto const &[k, s] : terms_) out.add(k.first, 0, s.shifted(k.second));
  return out;
}

void UPolyU::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool zero = std::all_of(it->second.coeffs().begin(), it->second.coeffs().end(),
                            [](Cyclotomic const &c) { return c.is_zero(); });
    it = zero ? terms_.erase(it) : std::next(it);
  }
}

bool operator==(UPolyU const &a, UPolyU const &b) { return a.T_ == b.T_ && a.terms_ == b.terms_; }

std::string UPolyU::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto const &[k, s] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "u^" << k.first << "*y^" << k.second << "*(" << s.str() << ")";
  }
  if (first) os << "0";
  return os.str();
}

BivarPoly to_rational(CycBivar const &p) {
  BivarPoly out;
  for (auto const &[k, v] : p.terms()) {
    if (!v.is_rational()) throw ArithmeticInvariantError("non-rational coefficient " + v.str() + " in sum side");
    out.add_term(k.first, k.second, v.rational());
  }
  return out;
}

BivarPoly linear_factor_product(std::vector<std::pair<int, int>> const &pairs) {
  BivarPoly p;
  p.add_term(0, 0, Rational(1));
  for (auto const &[a, b] : pairs) {
    BivarPoly f;
    f.add_term(1, 1, Rational(1));
    f.add_term(0, 1, Rational(a));
    f.add_term(0, 0, Rational(b));
    p = p * f;
  }
  return p;
}

bool bivar_factor_check(BivarPoly const &p, std::vector<std::pair<int, int>> const &pairs) {
  return p == linear_factor_product(pairs);
}

BivarPoly q_product(std::vector<int> const &a) {
  BivarPoly p;
  p.add_term(0, 0, Rational(1));
  for (int v : a) {
    BivarPoly f;
    f.add_term(1, 0, Rational(1));
    f.add_term(0, 0, Rational(v));
    p = p * f;
  }
  return p;
}

BivarPoly t_product(std::vector<int> const &a) {
  BivarPoly p;
  p.add_term(0, 0, Rational(1));
  for (int v : a) {
    BivarPoly f;
    f.add_term(0, 1, Rational(1));
    f.add_term(0, 0, Rational(v));
    p = p * f;
  }
  return p;
}

} // namespace reflekt

#include "reflekt/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace reflekt {

namespace {

constexpr int kMaxConductor = 4096;

std::array<std::atomic<FieldData const *>, kMaxConductor + 1> g_fields{};
std::mutex g_fields_mutex;

std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num, std::vector<std::int64_t> const &den) {
  // den monic
  int dn = int(den.size()) - 1;
  int nn = int(num.size()) - 1;
  std::vector<std::int64_t> q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    std::int64_t c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

FieldData *build_field(int m) {
  auto *f = new FieldData;
  f->m = m;
  f->cyclopoly = cyclotomic_polynomial(m);
  f->phi = int(f->cyclopoly.size()) - 1;
  int phi = f->phi;
  f->reduce.resize(m);
  std::vector<std::int64_t> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    if (k > 0) {
      // multiply by x, fold x^phi = -sum Phi_i x^i
      std::int64_t top = cur[phi - 1];
      for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (int i = 0; i < phi; ++i) cur[i] -= top * f->cyclopoly[i];
    }
    for (int i = 0; i < phi; ++i)
      if (cur[i] != 0) f->reduce[k].push_back({i, cur[i]});
  }
  return f;
}

using Coeffs = Cyclotomic::Coeffs;

// dense coefficients at conductor L (a.conductor() divides L)
Coeffs dense_at(Cyclotomic const &a, int L) {
  FieldData const &F = field(L);
  Coeffs out(F.phi);
  if (a.is_zero()) return out;
  int m = a.conductor();
  if (m == L) {
    auto const &c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
    return out;
  }
  int step = L / m;
  auto const &c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    for (auto const &[idx, coef] : F.reduce[(k * step) % L]) out[idx].add_mul(c[k], Rational(coef));
  }
  return out;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  int n = int(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!A[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw DivisionByZero();
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    Rational inv = A[col][col].inverse();
    for (int j = col; j < n; ++j) A[col][j] *= inv;
    b[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      Rational f = A[r][col];
      for (int j = col; j < n; ++j)
        if (!A[col][j].is_zero()) A[r][j] -= f * A[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

} // namespace

int euler_phi(int m) {
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::int64_t lcm_int(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

std::vector<std::int64_t> cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  std::vector<std::int64_t> p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

FieldData const &field(int m) {
  if (m < 1 || m > kMaxConductor) throw std::invalid_argument("conductor out of range: " + std::to_string(m));
  FieldData const *f = g_fields[m].load(std::memory_order_acquire);
  if (f) return *f;
  FieldData *built = build_field(m);
  std::lock_guard<std::mutex> lock(g_fields_mutex);
  f = g_fields[m].load(std::memory_order_acquire);
  if (f) {
    delete built;
    return *f;
  }
  g_fields[m].store(built, std::memory_order_release);
  return *built;
}

Cyclotomic::Cyclotomic(Rational r) {
  if (!r.is_zero()) c_.push_back(std::move(r));
}

void Cyclotomic::canonicalize() {
  bool nonconst = false;
  bool any = false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    any = true;
    if (i > 0) {
      nonconst = true;
      break;
    }
  }
  if (!any) {
    c_.clear();
    m_ = 1;
  } else if (!nonconst) {
    c_.resize(1);
    m_ = 1;
  }
}

Cyclotomic Cyclotomic::from_basis(int m, Coeffs c) {
  Cyclotomic r;
  r.m_ = m;
  r.c_ = std::move(c);
  if (int(r.c_.size()) != field(m).phi) throw std::invalid_argument("basis length mismatch");
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::from_terms(int m, std::vector<std::pair<std::int64_t, Rational>> const &terms) {
  FieldData const &F = field(m);
  Coeffs c(F.phi);
  for (auto const &[k, v] : terms) {
    std::int64_t kk = ((k % m) + m) % m;
    for (auto const &[idx, coef] : F.reduce[kk]) c[idx].add_mul(v, Rational(coef));
  }
  return from_basis(m, std::move(c));
}

Cyclotomic Cyclotomic::root(int m, std::int64_t k) { return from_terms(m, {{k, Rational(1)}}); }

Rational Cyclotomic::rational() const {
  if (m_ != 1) throw std::domain_error("not rational: " + str());
  return c_.empty() ? Rational() : c_[0];
}

Cyclotomic Cyclotomic::lifted(int L) const {
  if (L % m_ != 0) throw std::invalid_argument("lift target not a multiple of conductor");
  if (L == m_) return *this;
  Cyclotomic r;
  r.m_ = L;
  r.c_ = dense_at(*this, L);
  return r; // deliberately not canonicalized: caller wants conductor L
}

Cyclotomic Cyclotomic::galois(std::int64_t s) const {
  if (m_ == 1) return *this;
  std::int64_t ss = ((s % m_) + m_) % m_;
  if (std::gcd(ss, std::int64_t(m_)) != 1)
    throw std::invalid_argument("Galois exponent " + std::to_string(s) + " not coprime to conductor " + std::to_string(m_));
  if (ss == 1) return *this;
  FieldData const &F = field(m_);
  Coeffs out(F.phi);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    for (auto const &[idx, coef] : F.reduce[(k * ss) % m_]) out[idx].add_mul(c_[k], Rational(coef));
  }
  return from_basis(m_, std::move(out));
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (m_ == 1) return Cyclotomic(c_[0].inverse());
  int n = field(m_).phi;
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j) {
    Coeffs col = dense_at(*this * root(m_, j), m_);
    for (int i = 0; i < n; ++i) A[i][j] = col[i];
  }
  std::vector<Rational> b(n);
  b[0] = Rational(1);
  auto x = solve_rational(std::move(A), std::move(b));
  Coeffs c(x.begin(), x.end());
  return from_basis(m_, std::move(c));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto &v : r.c_) v = -v;
  return r;
}

Cyclotomic &Cyclotomic::operator+=(Cyclotomic const &b) {
  if (b.is_zero()) return *this;
  if (is_zero()) return *this = b;
  if (m_ == b.m_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    canonicalize();
    return *this;
  }
  if (b.m_ == 1) {
    c_[0] += b.c_[0];
    canonicalize();
    return *this;
  }
  int L = int(lcm_int(m_, b.m_));
  Coeffs a = dense_at(*this, L);
  Coeffs bb = dense_at(b, L);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += bb[i];
  return *this = from_basis(L, std::move(a));
}

Cyclotomic &Cyclotomic::operator-=(Cyclotomic const &b) { return *this += -b; }

Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b) {
  Cyclotomic r = a;
  r += b;
  return r;
}

Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b) {
  Cyclotomic r = a;
  r += -b;
  return r;
}

Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b) {
  if (a.is_zero() || b.is_zero()) return Cyclotomic();
  if (a.m_ == 1) {
    Cyclotomic r = b;
    for (auto &v : r.c_) v *= a.c_[0];
    return r;
  }
  if (b.m_ == 1) {
    Cyclotomic r = a;
    for (auto &v : r.c_) v *= b.c_[0];
    return r;
  }
  int L = a.m_ == b.m_ ? a.m_ : int(lcm_int(a.m_, b.m_));
  Coeffs A = a.m_ == L ? a.c_ : dense_at(a, L);
  Coeffs B = b.m_ == L ? b.c_ : dense_at(b, L);
  FieldData const &F = field(L);
  int phi = F.phi;
  boost::container::small_vector<Rational, 8> tmp(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (A[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) {
      if (B[j].is_zero()) continue;
      tmp[i + j].add_mul(A[i], B[j]);
    }
  }
  Coeffs out(phi);
  for (int i = 0; i < phi; ++i) out[i] = std::move(tmp[i]);
  for (int k = phi; k < 2 * phi - 1; ++k) {
    if (tmp[k].is_zero()) continue;
    for (auto const &[idx, coef] : F.reduce[k % L]) out[idx].add_mul(tmp[k], Rational(coef));
  }
  return Cyclotomic::from_basis(L, std::move(out));
}

Cyclotomic operator/(Cyclotomic const &a, Cyclotomic const &b) { return a * b.inverse(); }

bool operator==(Cyclotomic const &a, Cyclotomic const &b) {
  if (a.m_ == b.m_) return a.c_ == b.c_;
  // lifted() leaves values uncanonicalized, so conductor 1 on one side
  // does not settle it
  int L = int(lcm_int(a.m_, b.m_));
  return dense_at(a, L) == dense_at(b, L);
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string Cyclotomic::key(int m) const {
  Coeffs d = dense_at(*this, m);
  std::string s;
  for (auto const &v : d) {
    s += v.str();
    s += ',';
  }
  return s;
}

std::vector<std::array<std::string, 3>> Cyclotomic::triples() const {
  std::vector<std::array<std::string, 3>> out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) out.push_back({std::to_string(k), c_[k].num_str(), c_[k].den_str()});
  return out;
}

std::string Cyclotomic::str() const {
  if (c_.empty()) return "0";
  if (m_ == 1) return c_[0].str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Rational const &v = c_[k];
    if (v.is_zero()) continue;
    Rational a = v.abs();
    if (first) {
      if (v.sign() < 0) os << "-";
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << a;
      continue;
    }
    if (!a.is_one()) os << a << "*";
    os << "z" << m_;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    z += c_[k].to_double() * std::polar(1.0, 2 * M_PI * double(k) / m_);
  return z;
}

std::ostream &operator<<(std::ostream &os, Cyclotomic const &a) { return os << a.str(); }

GaloisAuto::GaloisAuto(int m, std::int64_t s) : conductor(m) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  exponent = ((s % m) + m) % m;
  if (m == 1) exponent = 0;
  if (std::gcd(exponent, std::int64_t(m)) != 1)
    throw std::invalid_argument("Galois exponent " + std::to_string(s) + " not coprime to " + std::to_string(m));
}

GaloisAuto GaloisAuto::compose(GaloisAuto const &o) const {
  if (conductor != o.conductor) throw std::invalid_argument("composing automorphisms of different fields");
  return GaloisAuto(conductor, exponent * o.exponent);
}

Cyclotomic galois_apply(GaloisAuto const &sigma, Cyclotomic const &a) {
  if (a.is_rational()) return a;
  if (sigma.conductor % a.conductor() != 0 && std::gcd(sigma.exponent, std::int64_t(a.conductor())) != 1)
    throw std::invalid_argument("Galois automorphism undefined on element of conductor " + std::to_string(a.conductor()));
  return a.galois(sigma.exponent == 0 ? 1 : sigma.exponent);
}

Cyclotomic geometric_ratio(int o, std::int64_t j, std::int64_t s) {
  std::int64_t jj = ((j % o) + o) % o;
  if (jj == 0) throw std::invalid_argument("geometric_ratio: eigenvalue 1");
  if (s < 1) throw std::invalid_argument("geometric_ratio: exponent must be positive");
  std::int64_t ord = o / std::gcd(jj, std::int64_t(o));
  std::int64_t n = s % ord;
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::int64_t i = 0; i < n; ++i) terms.push_back({(i * jj) % o, Rational(1)});
  return Cyclotomic::from_terms(o, terms);
}

Cyclotomic geometric_ratio(Cyclotomic const &lambda, GaloisAuto const &sigma) {
  if (lambda.is_one()) throw std::invalid_argument("geometric_ratio: eigenvalue 1");
  return (Cyclotomic(1) - galois_apply(sigma, lambda)) / (Cyclotomic(1) - lambda);
}

} // namespace reflekt

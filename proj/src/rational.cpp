#include "reflekt/rational.hpp"

#include <numeric>
#include <ostream>

namespace reflekt {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = INT64_MAX;

u128 uabs(i128 x) { return x < 0 ? u128(-x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

// n/d with d > 0, not necessarily reduced
Rational make(i128 n, i128 d) {
  if (d == 0) throw DivisionByZero();
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  if (fits(n) && d <= kMax) return Rational(std::int64_t(n), std::int64_t(d));
  mpq_class q(mpz_from(n), mpz_from(d));
  return Rational(q);
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DivisionByZero();
  if (n == INT64_MIN || d == INT64_MIN) {
    mpq_class q(mpz_from(n), mpz_from(d));
    q.canonicalize();
    set_big(q);
    return;
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

void Rational::set_big(mpq_class q) {
  big_ = std::make_unique<mpq_class>(std::move(q));
  normalize_big();
}

void Rational::normalize_big() {
  mpz_class const &n = big_->get_num();
  mpz_class const &d = big_->get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    long nn = n.get_si();
    long dd = d.get_si();
    if (nn != INT64_MIN) {
      num_ = nn;
      den_ = dd;
      big_.reset();
    }
  }
}

Rational Rational::parse(std::string const &s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return Rational(q);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (!big_) return Rational(-num_, den_);
  return Rational(mpq_class(-*big_));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (!big_) return Rational(den_, num_);
  return Rational(mpq_class(1 / *big_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rational operator+(Rational const &a, Rational const &b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != INT64_MIN) return Rational(r);
      return make(i128(a.num_) + b.num_, 1);
    }
    if (a.den_ == b.den_) return make(i128(a.num_) + b.num_, a.den_);
    std::int64_t g = std::gcd(a.den_, b.den_);
    i128 n = i128(a.num_) * (b.den_ / g) + i128(b.num_) * (a.den_ / g);
    i128 d = i128(a.den_ / g) * b.den_;
    return make(n, d);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(Rational const &a, Rational const &b) { return a + (-b); }

Rational operator*(Rational const &a, Rational const &b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != INT64_MIN) return Rational(r);
      return make(i128(a.num_) * b.num_, 1);
    }
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    i128 n = i128(a.num_ / g1) * (b.num_ / g2);
    i128 d = i128(a.den_ / g2) * (b.den_ / g1);
    if (fits(n) && d <= kMax) return Rational(std::int64_t(n), std::int64_t(d));
    return make(n, d);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(Rational const &a, Rational const &b) { return a * b.inverse(); }

void Rational::add_mul(Rational const &a, Rational const &b) {
  if (a.is_zero() || b.is_zero()) return;
  *this = *this + a * b;
}

bool operator==(Rational const &a, Rational const &b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false; // canonical: a value is big only when it does not fit
}

std::strong_ordering operator<=>(Rational const &a, Rational const &b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.num_) * b.den_;
    i128 r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::num_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }
std::string Rational::den_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }

std::int64_t Rational::to_int64() const {
  if (big_ || den_ != 1) throw std::range_error("not a small integer: " + str());
  return num_;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return double(num_) / double(den_);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>()(big_->get_str());
  return std::hash<std::int64_t>()(num_) * 1000003u ^ std::hash<std::int64_t>()(den_);
}

std::ostream &operator<<(std::ostream &os, Rational const &r) { return os << r.str(); }

} // namespace reflekt

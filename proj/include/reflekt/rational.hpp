#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace reflekt {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Exact rational. Values whose numerator and denominator fit in int64 live
// inline; anything larger moves to a heap mpq_class and drops back when it
// fits again.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {
    if (n == INT64_MIN) set_big(mpq_class(mpz_class(std::to_string(n))));
  }
  Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(mpq_class const &q) { set_big(q); }

  Rational(Rational const &o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational &&) noexcept = default;
  Rational &operator=(Rational const &o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational &operator=(Rational &&) noexcept = default;

  // parses "n" or "n/d"
  static Rational parse(std::string const &s);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  bool is_small() const { return !big_; }
  int sign() const;

  Rational operator-() const;
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(Rational const &a, Rational const &b);
  friend Rational operator-(Rational const &a, Rational const &b);
  friend Rational operator*(Rational const &a, Rational const &b);
  friend Rational operator/(Rational const &a, Rational const &b);
  Rational &operator+=(Rational const &b) { return *this = *this + b; }
  Rational &operator-=(Rational const &b) { return *this = *this - b; }
  Rational &operator*=(Rational const &b) { return *this = *this * b; }
  Rational &operator/=(Rational const &b) { return *this = *this / b; }

  // this += a*b
  void add_mul(Rational const &a, Rational const &b);

  friend bool operator==(Rational const &a, Rational const &b);
  friend std::strong_ordering operator<=>(Rational const &a, Rational const &b);

  mpq_class to_mpq() const;
  std::string str() const;
  std::string num_str() const;
  std::string den_str() const;
  // throws std::range_error unless an integer that fits
  std::int64_t to_int64() const;
  double to_double() const;
  std::size_t hash() const;

private:
  void set_big(mpq_class q);
  void normalize_big();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, Rational const &r);

} // namespace reflekt

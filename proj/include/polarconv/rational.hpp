#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "polarconv/errors.hpp"

namespace polarconv {

// Exact rational p/q with q > 0, kept reduced. Magnitudes are capped well
// below the int64 range so that cross-multiplied comparisons (including the
// squared comparisons QuadReal needs) always fit in __int128.
class Rational {
public:
  static constexpr std::int64_t magnitude_cap = (std::int64_t{1} << 31);

  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) { check_cap(); }
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const { return Rational(-num_, den_, already_reduced_tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Serialized as "p/q" (or just "p" when q == 1), the form used by witness
  // records so exactness survives the report.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  using i128 = __int128;
  struct already_reduced_tag {};
  Rational(std::int64_t n, std::int64_t d, already_reduced_tag) : num_(n), den_(d) {}

  static Rational from_i128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > magnitude_cap || n < -magnitude_cap || d > magnitude_cap)
      throw OverflowError("rational magnitude exceeds exact-arithmetic cap");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    check_cap();
  }

  void check_cap() const {
    if (num_ > magnitude_cap || num_ < -magnitude_cap || den_ > magnitude_cap)
      throw OverflowError("rational magnitude exceeds exact-arithmetic cap");
  }

  std::int64_t num_;
  std::int64_t den_;
};

// Element of the quadratic field Q + Q*sqrt(2), stored exactly as a + b*sqrt2.
// Sign, comparison and absolute value are exact: mixed-sign cases reduce to
// comparing a^2 with 2 b^2 in rational arithmetic.
class QuadReal {
public:
  QuadReal() = default;
  QuadReal(Rational a, Rational b) : a_(a), b_(b) {}
  explicit QuadReal(Rational a) : a_(a), b_(0) {}

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QuadReal operator-() const { return QuadReal(-a_, -b_); }
  friend QuadReal operator+(const QuadReal& x, const QuadReal& y) {
    return QuadReal(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadReal operator-(const QuadReal& x, const QuadReal& y) {
    return QuadReal(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadReal operator*(const QuadReal& x, const Rational& r) {
    return QuadReal(x.a_ * r, x.b_ * r);
  }

  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against 2 b^2.
    Rational a2 = a_ * a_;
    Rational b2 = b_ * b_ * Rational(2);
    if (a2 == b2) {
      // a = -b*sqrt2 with both nonzero is impossible over the rationals
      // unless both vanish; equality of squares here means |a| = |b|*sqrt2,
      // which cannot hold exactly. Defensive: treat as zero.
      return 0;
    }
    return a2 > b2 ? sa : sb;
  }

  QuadReal abs() const { return sign() < 0 ? -*this : *this; }

  friend bool operator==(const QuadReal& x, const QuadReal& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadReal& x, const QuadReal& y) { return !(x == y); }
  friend bool operator<(const QuadReal& x, const QuadReal& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator<=(const QuadReal& x, const QuadReal& y) {
    return (x - y).sign() <= 0;
  }
  friend bool operator>(const QuadReal& x, const QuadReal& y) { return y < x; }
  friend bool operator>=(const QuadReal& x, const QuadReal& y) { return y <= x; }

  double to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(2.0);
  }

  std::string str() const {
    return a_.str() + "+" + b_.str() + "*sqrt2";
  }

private:
  Rational a_{0};
  Rational b_{0};
};

} // namespace polarconv

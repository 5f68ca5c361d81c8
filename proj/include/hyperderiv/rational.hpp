#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hyperderiv {

/// Exact nonnegative rational on 64-bit integers. Derivative values are
/// ratios of hyperedge counts, so numerators and denominators stay small;
/// every operation reduces by gcd and checks for overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    reduce();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "5/2" for proper fractions, "3" for integers.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t lhs = checked_mul(a.num_, b.den_ / g);
    std::int64_t rhs = checked_mul(b.num_, a.den_ / g);
    return Rational(checked_add(lhs, rhs), checked_mul(a.den_, b.den_ / g));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
    std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                    checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    using W = __int128;
    return static_cast<W>(a.num_) * b.den_ < static_cast<W>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void reduce() {
    std::int64_t g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational overflow");
    return static_cast<std::int64_t>(r);
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("Rational overflow");
    return static_cast<std::int64_t>(r);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A nonnegative rational extended with +infinity, the value domain of
/// hypergraph derivatives. Reciprocation maps 0 <-> infinity.
class ExtendedValue {
 public:
  constexpr ExtendedValue() = default;
  ExtendedValue(Rational v) : value_(v) {
    if (v.num() < 0) throw std::domain_error("ExtendedValue: negative");
  }
  ExtendedValue(std::int64_t num, std::int64_t den) : ExtendedValue(Rational(num, den)) {}

  static ExtendedValue infinity() {
    ExtendedValue v;
    v.infinite_ = true;
    return v;
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_.is_zero(); }

  /// Finite payload; throws on infinity.
  const Rational& finite() const {
    if (infinite_) throw std::domain_error("ExtendedValue: infinite");
    return value_;
  }

  ExtendedValue reciprocal() const {
    if (infinite_) return ExtendedValue(Rational(0));
    if (value_.is_zero()) return infinity();
    return ExtendedValue(Rational(1) / value_);
  }

  double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
  }

  /// "inf" for the infinite value, otherwise the rational rendering.
  std::string to_string() const { return infinite_ ? "inf" : value_.to_string(); }

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedValue& a, const ExtendedValue& b) { return !(a == b); }
  friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedValue& v) {
    return os << v.to_string();
  }

 private:
  Rational value_;
  bool infinite_ = false;
};

}  // namespace hyperderiv

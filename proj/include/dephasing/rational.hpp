#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dephasing {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Backed by an arbitrary-precision integer pair, so sums of
/// couplings never overflow.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error when `den` is zero.
  Rational(const Integer& num, const Integer& den);

  /// Accepts "p/q", integers, and decimal strings with an optional exponent
  /// ("-0.25", "1.5e-3"). Decimal input is converted exactly: "0.1" is 1/10.
  /// Throws std::invalid_argument on malformed or non-finite text.
  static Rational parse(std::string_view text);

  Integer num() const { return boost::multiprecision::numerator(value_); }
  Integer den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  int signum() const { return value_.sign(); }
  double to_double() const;

  /// "p/q", or just "p" when the denominator is one.
  std::string str() const;

  std::size_t hash() const;

  Rational operator-() const { return Rational(Raw{-value_}); }
  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Value = boost::multiprecision::cpp_rational;
  struct Raw {
    Value v;
  };
  explicit Rational(Raw raw) : value_(std::move(raw.v)) {}

  Value value_{0};
};

}  // namespace dephasing

template <>
struct std::hash<dephasing::Rational> {
  std::size_t operator()(const dephasing::Rational& r) const noexcept { return r.hash(); }
};

#include "dephasing/rational.hpp"

#include <cctype>
#include <stdexcept>

#include <boost/functional/hash.hpp>

namespace dephasing {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional leading sign followed by digits.
bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return all_digits(s);
}

Rational::Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational::Integer value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return negative ? Rational::Integer(-value) : value;
}

Rational::Integer pow10(std::int64_t exponent) {
  Rational::Integer result = 1;
  for (std::int64_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = den < 0 ? Value(Integer(-num), Integer(-den)) : Value(num, den);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    auto d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  std::string_view mantissa = text;
  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!is_integer_literal(exp_text) || exp_text.size() > 6) {
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    }
    exponent = static_cast<std::int64_t>(parse_integer(exp_text));
    if (exponent > 4096 || exponent < -4096) {
      throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    }
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  std::int64_t frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    auto whole = mantissa.substr(0, dot);
    auto frac = mantissa.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    frac_digits = static_cast<std::int64_t>(frac.size());
  } else {
    if (!all_digits(mantissa)) {
      throw std::invalid_argument("malformed or non-finite number '" + std::string(text) + "'");
    }
    digits = std::string(mantissa);
  }

  Integer num = parse_integer(digits);
  if (negative) num = -num;
  std::int64_t scale = exponent - frac_digits;
  if (scale >= 0) return Rational(num * pow10(scale), Integer(1));
  return Rational(num, pow10(-scale));
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const {
  auto d = den();
  if (d == 1) return num().str();
  return num().str() + "/" + d.str();
}

std::size_t Rational::hash() const {
  std::size_t seed = 0;
  boost::hash_combine(seed, boost::multiprecision::hash_value(num()));
  boost::hash_combine(seed, boost::multiprecision::hash_value(den()));
  return seed;
}

}  // namespace dephasing

#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gamedecomp {

/// Exact rational number backed by GMP.
///
/// Values are always kept canonical: lowest terms, positive denominator.
/// Integers convert implicitly so that matrix literals like `{1, -1, 0}`
/// read naturally.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT

  Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Accepts "p", "p/q" and finite decimals such as "-1.25". A leading
  /// U+2212 minus sign is accepted as well as ASCII '-'.
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "p" when the denominator is one, otherwise "p/q".
  std::string str() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /// Fixed-point rendering rounded half away from zero. Approximate.
  std::string to_decimal(unsigned digits) const;

  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    mpq_neg(r.value_.get_mpq_t(), a.value_.get_mpq_t());
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

namespace detail {

inline mpz_class parse_integer_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("invalid rational literal '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid rational literal '" + std::string(whole) + "'");
  }
  return mpz_class(std::string(digits), 10);
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);

  bool negative = false;
  constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  if (text.starts_with(kUnicodeMinus)) {
    negative = true;
    text.remove_prefix(kUnicodeMinus.size());
  } else if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = detail::parse_integer_digits(text.substr(0, slash), whole);
    mpz_class den = detail::parse_integer_digits(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    value = mpq_class(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("invalid rational literal '" + std::string(whole) + "'");
    mpz_class int_value = int_part.empty() ? mpz_class(0) : detail::parse_integer_digits(int_part, whole);
    mpz_class frac_value = frac_part.empty() ? mpz_class(0) : detail::parse_integer_digits(frac_part, whole);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    value = mpq_class(int_value * scale + frac_value, scale);
  } else {
    value = mpq_class(detail::parse_integer_digits(text, whole));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

inline std::string Rational::to_decimal(unsigned digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class num = abs(value_.get_num()) * scale;
  const mpz_class& den = value_.get_den();
  // round half away from zero: floor((2*num + den) / (2*den))
  mpz_class scaled = (2 * num + den) / (2 * den);
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  if (sign() < 0 && scaled != 0) body.insert(0, "-");
  return body;
}

}  // namespace gamedecomp

template <>
struct std::hash<gamedecomp::Rational> {
  std::size_t operator()(const gamedecomp::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

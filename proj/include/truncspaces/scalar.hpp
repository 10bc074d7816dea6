// Exact-or-floating scalars and extended exponents in (0, inf].
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace ts {

using Rational = boost::multiprecision::cpp_rational;

// Absolute tolerance used whenever one side of a comparison is floating point.
inline constexpr double kMixedTolerance = 1e-12;

class Scalar {
public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int v) : v_(Rational(v)) {}
  Scalar(Rational v) : v_(std::move(v)) {}

  static Scalar real(double v) { return Scalar(Tag{}, v); }
  static Scalar fraction(long long num, long long den);

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const;
  double to_double() const;

  bool is_integer() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return (a <=> b) == 0;
  }

private:
  struct Tag {};
  Scalar(Tag, double v) : v_(v) {}
  std::variant<Rational, double> v_;
};

Scalar abs(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

// Decimal ("0.125", "-3", "1e-2") or fraction ("a/b"); converted exactly.
Scalar parse_scalar(std::string_view text);

class Exponent {
public:
  explicit Exponent(Scalar v);
  Exponent(int v) : Exponent(Scalar(v)) {}
  static Exponent infinity() { return Exponent(); }
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return inf_; }
  const Scalar& value() const;
  Scalar reciprocal() const;
  double to_double() const;
  std::string to_string() const;

  friend std::weak_ordering operator<=>(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return (a <=> b) == 0;
  }

private:
  Exponent() : inf_(true) {}
  bool inf_ = false;
  Scalar v_;
};

Exponent min(const Exponent& a, const Exponent& b);
Exponent max(const Exponent& a, const Exponent& b);

// p' with 1/p + 1/p' = 1 for p >= 1 and p' = inf for p <= 1.
Exponent conjugate_exponent(const Exponent& p);

}  // namespace ts

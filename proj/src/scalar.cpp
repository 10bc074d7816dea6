#include "truncspaces/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace ts {

namespace {

double rational_to_double(const Rational& r) {
  return static_cast<double>(r);
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

Scalar Scalar::fraction(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Scalar(Rational(num, den));
}

const Rational& Scalar::rational() const {
  if (!is_rational()) throw std::logic_error("scalar is not rational");
  return std::get<Rational>(v_);
}

double Scalar::to_double() const {
  if (is_rational()) return rational_to_double(std::get<Rational>(v_));
  return std::get<double>(v_);
}

bool Scalar::is_integer() const {
  if (is_rational()) return denominator(std::get<Rational>(v_)) == 1;
  double v = std::get<double>(v_);
  return std::isfinite(v) && v == std::floor(v);
}

std::string Scalar::to_string() const {
  if (!is_rational()) return format_double(std::get<double>(v_));
  const auto& r = std::get<Rational>(v_);
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational() + b.rational());
  return Scalar::real(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational() - b.rational());
  return Scalar::real(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(a.rational() * b.rational());
  return Scalar::real(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) {
    if (b.rational() == 0) throw std::domain_error("division by zero");
    return Scalar(a.rational() / b.rational());
  }
  return Scalar::real(a.to_double() / b.to_double());
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-std::get<Rational>(v_)));
  return Scalar::real(-std::get<double>(v_));
}

std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) {
    const auto& x = a.rational();
    const auto& y = b.rational();
    if (x < y) return std::weak_ordering::less;
    if (y < x) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  double x = a.to_double();
  double y = b.to_double();
  if (std::abs(x - y) <= kMixedTolerance) return std::weak_ordering::equivalent;
  return x < y ? std::weak_ordering::less : std::weak_ordering::greater;
}

Scalar abs(const Scalar& x) { return x < Scalar(0) ? -x : x; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar parse_scalar(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Scalar num = parse_scalar(text.substr(0, slash));
    Scalar den = parse_scalar(text.substr(slash + 1));
    if (den == Scalar(0)) fail();
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  boost::multiprecision::cpp_int mant = 0;
  long long scale = 0;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      digits = true;
      if (dot) --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i == text.size()) fail();
    long long e = 0;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])) || e > 100000) fail();
      e = e * 10 + (text[i] - '0');
    }
    scale += eneg ? -e : e;
  }
  Rational r(mant);
  boost::multiprecision::cpp_int p10 = 1;
  for (long long k = 0; k < (scale < 0 ? -scale : scale); ++k) p10 *= 10;
  r = scale < 0 ? r / Rational(p10) : r * Rational(p10);
  return Scalar(neg ? Rational(-r) : r);
}

Exponent::Exponent(Scalar v) : v_(std::move(v)) {
  if (!(v_ > Scalar(0))) throw std::invalid_argument("exponent must be positive");
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinity();
  return Exponent(parse_scalar(text));
}

const Scalar& Exponent::value() const {
  if (inf_) throw std::logic_error("infinite exponent has no finite value");
  return v_;
}

Scalar Exponent::reciprocal() const {
  if (inf_) return Scalar(0);
  return Scalar(1) / v_;
}

double Exponent::to_double() const {
  return inf_ ? INFINITY : v_.to_double();
}

std::string Exponent::to_string() const { return inf_ ? "inf" : v_.to_string(); }

std::weak_ordering operator<=>(const Exponent& a, const Exponent& b) {
  if (a.inf_ || b.inf_) {
    if (a.inf_ && b.inf_) return std::weak_ordering::equivalent;
    return a.inf_ ? std::weak_ordering::greater : std::weak_ordering::less;
  }
  return a.v_ <=> b.v_;
}

Exponent min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

Exponent conjugate_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1);
  if (p.value() <= Scalar(1)) return Exponent::infinity();
  return Exponent(p.value() / (p.value() - Scalar(1)));
}

}  // namespace ts

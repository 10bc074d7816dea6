#include "truncspaces/xreal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ts {

namespace {



double ldexp_safe(double m, std::int64_t e) {
  if (e > 4000) return m > 0 ? INFINITY : -INFINITY;
  if (e < -4000) return 0.0;
  return std::ldexp(m, static_cast<int>(e));
}

}  // namespace

XReal::XReal(double m, std::int64_t e) {
  if (std::isnan(m)) throw std::domain_error("XReal: NaN");
  if (std::isinf(m)) throw std::overflow_error("XReal: infinite input");
  if (m == 0.0) return;
  int k = 0;
  m_ = std::frexp(m, &k);
  e_ = e + k;
}

XReal::XReal(double v) : XReal(v, 0) {}

XReal XReal::exp2(double l) {
  if (std::isnan(l)) throw std::domain_error("XReal::exp2: NaN");
  if (l == -INFINITY) return XReal();
  if (l > 4e18) throw std::overflow_error("XReal::exp2: exponent out of range");
  if (l < -4e18) return XReal();
  double k = std::floor(l);
  return XReal(std::exp2(l - k), static_cast<std::int64_t>(k));
}

double XReal::to_double() const { return is_zero() ? 0.0 : ldexp_safe(m_, e_); }

double XReal::log2() const {
  if (is_zero()) return -INFINITY;
  return std::log2(std::fabs(m_)) + static_cast<double>(e_);
}

XReal XReal::abs() const {
  XReal out = *this;
  out.m_ = std::fabs(m_);
  return out;
}

XReal XReal::pow(double a) const {
  if (is_zero()) {
    if (a > 0) return XReal();
    if (a == 0) return XReal(1.0);
    throw std::domain_error("XReal::pow: zero to negative power");
  }
  if (a == 1.0) return abs();
  // |m|^a * 2^{a e}, exponent split to keep the fractional part small
  double ae = a * static_cast<double>(e_);
  double k = std::floor(ae);
  double mant = std::pow(std::fabs(m_), a) * std::exp2(ae - k);
  return XReal(mant, static_cast<std::int64_t>(k));
}

XReal XReal::operator-() const {
  XReal out = *this;
  out.m_ = -m_;
  return out;
}

XReal operator*(const XReal& a, const XReal& b) {
  if (a.is_zero() || b.is_zero()) return XReal();
  return XReal(a.m_ * b.m_, a.e_ + b.e_);
}

XReal operator/(const XReal& a, const XReal& b) {
  if (b.is_zero()) throw std::domain_error("XReal: division by zero");
  if (a.is_zero()) return XReal();
  return XReal(a.m_ / b.m_, a.e_ - b.e_);
}

XReal operator+(const XReal& a, const XReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const XReal& big = a.e_ >= b.e_ ? a : b;
  const XReal& small = a.e_ >= b.e_ ? b : a;
  std::int64_t gap = big.e_ - small.e_;
  if (gap > 1100) return big;
  return XReal(big.m_ + std::ldexp(small.m_, -static_cast<int>(gap)), big.e_);
}

std::partial_ordering operator<=>(const XReal& a, const XReal& b) {
  XReal d = a - b;
  if (d.is_zero()) return std::partial_ordering::equivalent;
  return d.m_ < 0 ? std::partial_ordering::less : std::partial_ordering::greater;
}

XReal max(const XReal& a, const XReal& b) { return a < b ? b : a; }

void XSum::rescale(std::int64_t e) {
  s_ = ldexp_safe(s_, e_ - e);
  c_ = ldexp_safe(c_, e_ - e);
  e_ = e;
}

void XSum::add(const XReal& x) {
  if (x.is_zero()) return;
  if (empty_) {
    empty_ = false;
    e_ = x.exponent();
  } else if (x.exponent() > e_) {
    rescale(x.exponent());
  }
  double t = ldexp_safe(x.mantissa(), x.exponent() - e_);
  double sum = s_ + t;
  if (std::fabs(s_) >= std::fabs(t))
    c_ += (s_ - sum) + t;
  else
    c_ += (t - sum) + s_;
  s_ = sum;
  if (std::fabs(s_) > 0x1p64) rescale(e_ + 64);
}

XReal XSum::total() const {
  if (empty_) return XReal();
  return XReal(s_ + c_) * XReal::exp2(static_cast<double>(e_));
}

}  // namespace ts

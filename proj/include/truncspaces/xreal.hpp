// Extended-range reals: double mantissa with a 64-bit binary exponent.
#pragma once

#include <compare>
#include <cstdint>

namespace ts {

class XReal {
public:
  XReal() = default;
  XReal(double v);
  static XReal exp2(double l);  // 2^l without overflow

  bool is_zero() const { return m_ == 0.0; }
  bool is_negative() const { return m_ < 0.0; }
  double mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }

  double to_double() const;  // +-inf or 0 when out of range
  double log2() const;       // of |x|; -inf for zero

  XReal abs() const;
  XReal pow(double a) const;  // |x|^a

  XReal operator-() const;
  friend XReal operator*(const XReal& a, const XReal& b);
  friend XReal operator/(const XReal& a, const XReal& b);
  friend XReal operator+(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }
  XReal& operator*=(const XReal& o) { return *this = *this * o; }
  XReal& operator+=(const XReal& o) { return *this = *this + o; }

  friend std::partial_ordering operator<=>(const XReal& a, const XReal& b);
  friend bool operator==(const XReal& a, const XReal& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }

private:
  XReal(double m, std::int64_t e);  // normalizes
  double m_ = 0.0;                  // 0 or |m| in [0.5, 1)
  std::int64_t e_ = 0;
};

XReal max(const XReal& a, const XReal& b);

// Compensated (Neumaier) summation carried at a floating binary scale.
class XSum {
public:
  void add(const XReal& x);
  XReal total() const;

private:
  void rescale(std::int64_t e);
  double s_ = 0.0;
  double c_ = 0.0;
  std::int64_t e_ = 0;
  bool empty_ = true;
};

}  // namespace ts

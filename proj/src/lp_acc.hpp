// Internal helper shared by the norm sources.
#pragma once

#include "truncspaces/scalar.hpp"
#include "truncspaces/xreal.hpp"

namespace ts {

// l_e quasi-norm accumulator; e = inf gives the sup.
class LpAcc {
public:
  explicit LpAcc(const Exponent& e) : sup_(e.is_infinite()), e_(sup_ ? 0.0 : e.to_double()) {}
  void add(const XReal& x) {
    if (sup_)
      m_ = max(m_, x.abs());
    else
      s_.add(x.pow(e_));
  }
  // adds w * x^e; only meaningful for finite e
  void add_weighted(const XReal& x, const XReal& w) { s_.add(w * x.pow(e_)); }
  XReal value() const { return sup_ ? m_ : s_.total().pow(1.0 / e_); }

private:
  bool sup_;
  double e_;
  XSum s_;
  XReal m_;
};

}  // namespace ts

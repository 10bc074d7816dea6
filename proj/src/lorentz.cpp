#include "truncspaces/lorentz.hpp"

#include "lp_acc.hpp"

#include <cmath>
#include <stdexcept>

namespace ts {

namespace {

void require_finite_u(const Exponent& u) {
  if (u.is_infinite()) throw std::invalid_argument("Lorentz norms require u < inf");
}

bool exact_for(const Exponent& q) { return q.is_infinite() || q == Exponent(1); }

// samples x_n = a*_{2^n} (or a_{2^n}) for n = 0.. while 2^n <= horizon
std::vector<double> dyadic_samples(const ScalarSequence& a, bool rearranged) {
  std::vector<double> v = rearranged ? rearrange(a).values() : a.values();
  std::vector<double> out;
  for (std::size_t n = 1; n <= v.size(); n *= 2) out.push_back(v[n - 1]);
  return out;
}

XReal block_form(const std::vector<double>& x, const Exponent& u, const Exponent& q,
                 const Exponent& r, double b) {
  const double iu = u.reciprocal().to_double();
  LpAcc outer(r);
  for (int j = 0; (std::size_t{1} << j) - 1 < x.size(); ++j) {
    LpAcc inner(q);
    std::size_t lo = (std::size_t{1} << j) - 1, hi = (std::size_t{1} << (j + 1)) - 2;
    for (std::size_t n = lo; n <= hi && n < x.size(); ++n)
      inner.add(XReal::exp2(iu * static_cast<double>(n)) * XReal(x[n]));
    outer.add(XReal::exp2(b * j) * inner.value());
  }
  return outer.value();
}

}  // namespace

NormValue lorentz_seq_norm(const ScalarSequence& a, const Exponent& u, const Exponent& q) {
  return lz_seq_norm(a, u, q, 0.0);
}

NormValue lz_seq_norm(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                      double b) {
  require_finite_u(u);
  const double iu = u.reciprocal().to_double();
  auto x = dyadic_samples(a, true);
  LpAcc acc(q);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double nn = static_cast<double>(n);
    acc.add(XReal::exp2(iu * nn + b * std::log2(1.0 + nn)) * XReal(x[n]));
  }
  return NormValue::from(acc.value(), exact_for(q) && b == 0.0);
}

NormValue lz_seq_norm_full(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                           double b) {
  require_finite_u(u);
  const double iu = u.reciprocal().to_double();
  auto v = rearrange(a).values();
  const bool sup = q.is_infinite();
  const double qd = sup ? 1.0 : q.to_double();
  LpAcc acc(q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double n = static_cast<double>(i + 1);
    XReal term = XReal(std::pow(n, iu) * std::pow(1.0 + std::log(n), b)) * XReal(v[i]);
    // the 1/n measure goes inside the q-th power
    acc.add(sup ? term : term * XReal(std::pow(n, -1.0 / qd)));
  }
  return NormValue::from(acc.value(), false);
}

NormValue trunc_lorentz_seq_norm(const ScalarSequence& a, const Exponent& u,
                                 const Exponent& q, const Exponent& r, double b) {
  require_finite_u(u);
  return NormValue::from(block_form(dyadic_samples(a, true), u, q, r, b),
                         exact_for(q) && exact_for(r));
}

NormValue trunc_lorentz_direct(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                               const Exponent& r, double b) {
  require_finite_u(u);
  return NormValue::from(block_form(dyadic_samples(a, false), u, q, r, b),
                         exact_for(q) && exact_for(r));
}

}  // namespace ts

#include "truncspaces/gm.hpp"

#include "truncspaces/lorentz.hpp"

#include "lp_acc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ts {

namespace {

// Range sums over |a_k - a_{k+1}| without subtraction: a sliding window
// loses everything to cancellation once a_n decays by many orders.
class RangeSum {
public:
  explicit RangeSum(const std::vector<long double>& xs) : n_(xs.size()), tree_(2 * xs.size()) {
    std::copy(xs.begin(), xs.end(), tree_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t i = n_ - 1; i > 0; --i) tree_[i] = tree_[2 * i] + tree_[2 * i + 1];
  }
  // sum over [lo, hi]
  long double sum(std::size_t lo, std::size_t hi) const {
    long double out = 0;
    for (lo += n_, hi += n_ + 1; lo < hi; lo /= 2, hi /= 2) {
      if (lo & 1) out += tree_[lo++];
      if (hi & 1) out += tree_[--hi];
    }
    return out;
  }

private:
  std::size_t n_;
  std::vector<long double> tree_;
};

void require_mid_p(const Exponent& p) {
  if (!(p > Exponent(1)) || p.is_infinite())
    throw std::invalid_argument("GM norm formulas require 1 < p < inf");
}

double inv(const Exponent& e) { return e.reciprocal().to_double(); }

}  // namespace

GMReport gm_check(const ScalarSequence& a, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("GM horizon must be >= 1");
  const auto n2 = static_cast<std::size_t>(2 * N);
  std::vector<long double> v(n2 + 1);
  for (std::size_t i = 1; i <= n2; ++i) v[i] = std::abs(a.at(static_cast<std::int64_t>(i)));
  std::vector<long double> diff(n2);  // diff[k] = |a_k - a_{k+1}|, k = 1..2N-1
  for (std::size_t k = 1; k < n2; ++k) diff[k] = std::abs(v[k] - v[k + 1]);

  GMReport out;
  out.horizon = N;
  const RangeSum windows(diff);
  for (std::int64_t n = 1; n <= N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const long double var = windows.sum(un, 2 * un - 1);
    if (v[un] == 0) {
      if (var > 0 && !out.violating_n) {
        out.is_gm = false;
        out.violating_n = n;
        out.constant = INFINITY;
      }
      continue;
    }
    if (out.is_gm) out.constant = std::max(out.constant, static_cast<double>(var / v[un]));
  }
  return out;
}

ScalarSequence gm_power_sequence(double alpha, double beta, std::int64_t N) {
  return ScalarSequence::rule(
      [alpha, beta](std::int64_t n) {
        double x = static_cast<double>(n);
        return std::pow(x, -alpha) * std::pow(std::log(x + 1.0), -beta);
      },
      N, "power");
}

NormValue gm_trunc_besov_norm_periodic(std::span<const double> samples, double s,
                                       const Exponent& p, const Exponent& q,
                                       const Exponent& r, double b) {
  require_mid_p(p);
  if (b == 0.0) throw std::invalid_argument("GM periodic formula requires b != 0");
  const double w = s + 1.0 - inv(p);
  LpAcc outer(r);
  for (int k = 0; (std::size_t{1} << k) - 1 < samples.size(); ++k) {
    LpAcc inner(q);
    const BlockIndex blk{k};
    for (auto nu = blk.first(); nu <= blk.last() && static_cast<std::size_t>(nu) < samples.size();
         ++nu)
      inner.add(XReal::exp2(w * static_cast<double>(nu)) * XReal(samples[nu]));
    outer.add(XReal::exp2(b * k) * inner.value());
  }
  return NormValue::from(outer.value(), false);
}

NormValue gm_lip_norm_periodic(std::span<const double> samples, double s, const Exponent& p,
                               const Exponent& q, double b) {
  require_mid_p(p);
  if (!(s > 0)) throw std::invalid_argument("GM Lipschitz formula requires s > 0");
  if (q.is_infinite()) throw std::invalid_argument("GM Lipschitz formula requires q < inf");
  const double qd = q.to_double(), pd = p.to_double();
  if (!(b < -1.0 / qd)) throw std::invalid_argument("GM Lipschitz formula requires b < -1/q");
  const double w = s + 1.0 - 1.0 / pd;
  XSum outer;
  for (int k = 0; (std::size_t{1} << k) - 1 < samples.size(); ++k) {
    XSum inner;
    const BlockIndex blk{k};
    for (auto nu = blk.first(); nu <= blk.last() && static_cast<std::size_t>(nu) < samples.size();
         ++nu)
      inner.add(XReal::exp2(w * qd * static_cast<double>(nu)) * XReal(samples[nu]).pow(pd));
    outer.add(XReal::exp2((b + 1.0 / qd) * qd * k) * inner.total().pow(qd / pd));
  }
  return NormValue::from(outer.total().pow(1.0 / qd), false);
}

RadialProfile RadialProfile::from_high(std::vector<double> high) {
  RadialProfile out;
  out.high = std::move(high);
  return out;
}

double RadialProfile::at(int nu) const {
  if (nu >= 0 && static_cast<std::size_t>(nu) < high.size()) return high[nu];
  if (nu <= 0 && static_cast<std::size_t>(-nu) < low.size()) return low[-nu];
  throw std::out_of_range("radial profile has no sample at 2^" + std::to_string(nu));
}

NormValue gm_radial_trunc_norm(const RadialProfile& F0, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b, int d,
                               std::optional<int> high_until) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (p.is_infinite() || !(p.to_double() > 2.0 * d / (d + 1.0)))
    throw std::invalid_argument("GM radial formula requires 2d/(d+1) < p < inf");
  if (b == 0.0) throw std::invalid_argument("GM radial formula requires b != 0");
  for (double x : F0.low)
    if (!(x >= 0)) throw std::invalid_argument("radial samples must be non-negative");
  for (double x : F0.high)
    if (!(x >= 0)) throw std::invalid_argument("radial samples must be non-negative");
  const int top = high_until.value_or(static_cast<int>(F0.high.size()) - 1);
  if (top >= static_cast<int>(F0.high.size()))
    throw std::out_of_range("radial profile samples stop at 2^" +
                            std::to_string(static_cast<int>(F0.high.size()) - 1) +
                            ", requested 2^" + std::to_string(top));
  const double pd = p.to_double();

  XSum low;
  for (std::size_t j = 0; j < F0.low.size(); ++j)
    low.add(XReal::exp2(-static_cast<double>(j) * (pd - 1.0) * d) * XReal(F0.low[j]).pow(pd));

  const double w = s + d - d / pd;
  LpAcc outer(r);
  for (int j = 0; top >= 1 && (1 << j) <= top; ++j) {
    LpAcc inner(q);
    for (int nu = 1 << j; nu <= (1 << (j + 1)) - 1 && nu <= top; ++nu)
      inner.add(XReal::exp2(w * nu) * XReal(F0.high[nu]));
    outer.add(XReal::exp2(b * j) * inner.value());
  }
  return NormValue::from(low.total().pow(1.0 / pd) + outer.value(), false);
}

GMLorentzPair gm_lorentz_equiv(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                               const Exponent& r, double b, std::int64_t N) {
  if (N < 2) throw std::invalid_argument("GM horizon must be >= 2");
  ScalarSequence cut = ScalarSequence::rule([a](std::int64_t n) { return a.at(n); }, N);
  GMLorentzPair out;
  out.applicable = gm_check(cut, N / 2).is_gm;
  out.rearranged = trunc_lorentz_seq_norm(cut, u, q, r, b);
  out.direct = trunc_lorentz_direct(cut, u, q, r, b);
  return out;
}

}  // namespace ts

#include "truncspaces/interpolation.hpp"

#include "lp_acc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ts {

namespace {

void check_admissible(int theta, double b, const Exponent& r) {
  const double ir = r.reciprocal().to_double();
  if (theta == 0 && !(b >= -ir))
    throw std::invalid_argument("theta = 0 requires b >= -1/r");
  if (theta == 1 && !(b < -ir)) throw std::invalid_argument("theta = 1 requires b < -1/r");
  if (theta != 0 && theta != 1) throw std::invalid_argument("theta must be 0 or 1");
}

// Sums [(1+j)^b t_j^{-theta} K_j]^r over j = 0..j_max; flags the tail.
template <class K>
InterpResult interp_sum(int theta, double b, const Exponent& r, double log2_inv_t_step,
                        int j_max, K&& k_at) {
  const bool sup = r.is_infinite();
  const double rd = sup ? 1.0 : r.to_double();
  std::vector<XReal> terms;
  for (int j = 0; j <= j_max; ++j) {
    double jj = j;
    XReal w = XReal::exp2(b * std::log2(1.0 + jj) + theta * jj * log2_inv_t_step);
    XReal t = w * k_at(j);
    terms.push_back(sup ? t : t.pow(rd));
  }
  XSum total;
  XReal top, last;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    total.add(terms[i]);
    top = max(top, terms[i]);
    if (i + 4 >= terms.size()) last = sup ? max(last, terms[i]) : last + terms[i];
  }
  XReal sum = sup ? top : total.total();
  InterpResult out;
  out.j_max = j_max;
  out.norm = NormValue::from(sup ? sum : sum.pow(1.0 / rd), false);
  out.converged = sum.is_zero() || (last / sum).to_double() <= 1e-10;
  return out;
}

}  // namespace

NormValue k_functional(std::span<const double> w, double t, const WeightedLqPair& pair) {
  if (!(t > 0)) throw std::invalid_argument("K-functional needs t > 0");
  LpAcc acc(pair.q);
  const double lt = std::log2(t);
  for (std::size_t nu = 0; nu < w.size(); ++nu) {
    if (w[nu] == 0.0) continue;
    double n = static_cast<double>(nu);
    acc.add(XReal::exp2(std::min(n * pair.s, lt + n * pair.s0)) * XReal(std::fabs(w[nu])));
  }
  return NormValue::from(acc.value(), false);
}

InterpResult limiting_interp_norm(std::span<const double> w, int theta, double b,
                                  const Exponent& r, const WeightedLqPair& pair,
                                  std::optional<int> j_max) {
  check_admissible(theta, b, r);
  if (!(pair.s0 > pair.s)) throw std::invalid_argument("limiting interpolation needs s0 > s");
  int top = -1;
  for (std::size_t nu = 0; nu < w.size(); ++nu)
    if (w[nu] != 0.0) top = static_cast<int>(nu);
  const int J = j_max.value_or(std::max(top, 0) + 8);
  const double gap = pair.s0 - pair.s;
  const bool sup = pair.q.is_infinite();
  const double qd = sup ? 1.0 : pair.q.to_double();
  // K at t_j = 2^{-j gap}: nu < j damped by 2^{(nu-j) gap}, nu >= j undamped
  std::vector<XReal> a;
  for (std::size_t nu = 0; nu < w.size(); ++nu)
    a.push_back(XReal::exp2(static_cast<double>(nu) * pair.s) * XReal(std::fabs(w[nu])));
  return interp_sum(theta, b, r, gap, J, [&](int j) {
    XSum s;
    XReal m;
    for (std::size_t nu = 0; nu < a.size(); ++nu) {
      if (a[nu].is_zero()) continue;
      double damp = std::min(0.0, (static_cast<double>(nu) - j) * gap);
      XReal x = a[nu] * XReal::exp2(damp);
      if (sup)
        m = max(m, x);
      else
        s.add(x.pow(qd));
    }
    return sup ? m : s.total().pow(1.0 / qd);
  });
}

std::vector<double> level_profile_of(const WaveletSequence& l, const Exponent& p) {
  std::map<int, std::map<std::uint32_t, LpAcc>> acc;
  for (const auto& [key, v] : l.entries())
    acc[key.j].try_emplace(key.G, p).first->second.add(l.magnitude(key, v));
  std::vector<double> out(static_cast<std::size_t>(l.max_level() + 1), 0.0);
  for (const auto& [j, per_g] : acc) {
    XSum s;
    for (const auto& [G, a] : per_g) s.add(a.value());
    out[static_cast<std::size_t>(j)] = s.total().to_double();
  }
  return out;
}

namespace {

double inv_alpha(const LorentzPair& pair) {
  if (pair.u0.is_infinite() || pair.u1.is_infinite())
    throw std::invalid_argument("Lorentz couple needs finite u0, u1");
  double ia = pair.u0.reciprocal().to_double() - pair.u1.reciprocal().to_double();
  if (!(ia > 0)) throw std::invalid_argument("Lorentz couple needs u0 < u1");
  return ia;
}

// K at cut 2^c, c = log2(t^{-alpha})
XReal lorentz_k_at(const std::vector<double>& x, double log2_t, double c,
                   const LorentzPair& pair) {
  LpAcc low(pair.q0), high(pair.q1);
  const double iu0 = pair.u0.reciprocal().to_double();
  const double iu1 = pair.u1.reciprocal().to_double();
  for (std::size_t n = 0; n < x.size(); ++n) {
    double nn = static_cast<double>(n);
    if (nn <= c)
      low.add(XReal::exp2(nn * iu0) * XReal(x[n]));
    else
      high.add(XReal::exp2(nn * iu1) * XReal(x[n]));
  }
  return XReal::exp2(log2_t) * low.value() + high.value();
}

std::vector<double> rearranged_samples(const ScalarSequence& a) {
  auto v = rearrange(a).values();
  std::vector<double> out;
  for (std::size_t n = 1; n <= v.size(); n *= 2) out.push_back(v[n - 1]);
  return out;
}

}  // namespace

NormValue lorentz_k_functional(const ScalarSequence& a, double t, const LorentzPair& pair) {
  if (!(t > 0)) throw std::invalid_argument("K-functional needs t > 0");
  double ia = inv_alpha(pair);
  double lt = std::log2(t);
  return NormValue::from(lorentz_k_at(rearranged_samples(a), lt, -lt / ia, pair), false);
}

InterpResult lorentz_limiting_interp_norm(const ScalarSequence& a, const LorentzPair& pair,
                                          int theta, double b, const Exponent& r,
                                          std::optional<int> j_max) {
  check_admissible(theta, b, r);
  double ia = inv_alpha(pair);
  auto x = rearranged_samples(a);
  const int J = j_max.value_or(static_cast<int>(x.size()) + 8);
  return interp_sum(theta, b, r, ia, J, [&](int j) {
    return lorentz_k_at(x, -j * ia, static_cast<double>(j), pair);
  });
}

std::pair<NormValue, NormValue> hardy_ratio(std::span<const double> xi, double lambda,
                                            const Exponent& q, double b, HardySide side) {
  if (!(lambda > 0)) throw std::invalid_argument("Hardy functional needs lambda > 0");
  const std::size_t n = xi.size();
  std::vector<XReal> sums(n);
  if (side == HardySide::H1) {
    XSum s;
    for (std::size_t j = 0; j < n; ++j) {
      s.add(XReal(std::fabs(xi[j])));
      sums[j] = s.total();
    }
  } else {
    XSum s;
    for (std::size_t j = n; j-- > 0;) {
      s.add(XReal(std::fabs(xi[j])));
      sums[j] = s.total();
    }
  }
  const double sign = side == HardySide::H1 ? -1.0 : 1.0;
  auto weight = [&](double j) {
    return XReal::exp2(sign * j * lambda + b * std::log2(1.0 + j));
  };
  LpAcc lhs(q), rhs(q);
  for (std::size_t j = 0; j < n; ++j) {
    XReal w = weight(static_cast<double>(j));
    lhs.add(w * sums[j]);
    rhs.add(w * XReal(std::fabs(xi[j])));
  }
  if (side == HardySide::H1 && n > 0 && !sums.back().is_zero()) {
    // partial sums are frozen past the support; run until the weight is negligible
    const bool sup = q.is_infinite();
    const double qd = sup ? 1.0 : q.to_double();
    const double peak = std::max(0.0, b / (lambda * std::log(2.0)) - 1.0);
    XSum tail;
    XReal top;
    for (double j = static_cast<double>(n);; j += 1.0) {
      XReal t = weight(j).pow(qd);
      top = max(top, t);
      tail.add(t);
      if (j > peak && j > static_cast<double>(n) + 64 && (t / top).to_double() < 1e-18) break;
    }
    if (sup)
      lhs.add(top * sums.back());
    else
      lhs.add_weighted(sums.back(), tail.total());
  }
  return {NormValue::from(lhs.value(), false), NormValue::from(rhs.value(), false)};
}

std::vector<double> lambda_grid(int J) {
  if (J < 1) throw std::invalid_argument("lambda grid needs J >= 1");
  std::vector<double> out{1.0};
  for (int j = 1; j <= J; ++j) out.push_back(std::exp2(-std::exp2(j - 1)));
  return out;
}

}  // namespace ts

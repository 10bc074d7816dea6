// Closed forms for block-uniform profiles: every level of a block shares one
// value, so per-level sums collapse to geometric series in j.
#include "truncspaces/norms.hpp"

#include "lp_acc.hpp"

#include <cmath>
#include <stdexcept>

namespace ts {

namespace {

constexpr double kFlat = 1e-12;

double inv(const Exponent& e) { return e.reciprocal().to_double(); }

// number of levels in block k
XReal block_size(int k) { return XReal::exp2(k); }

// sum over j in block k of 2^{c j}
XReal geo(int k, double c) {
  if (std::abs(c) < kFlat) return block_size(k);
  if (k > 1000) {
    if (c < 0) return XReal();
    throw std::overflow_error("block weight out of range");
  }
  const double lo = std::exp2(k) - 1.0;
  const double n = std::exp2(k);
  const double ln2 = std::log(2.0);
  if (c > 0)
    return XReal::exp2(c * (lo + n - 1.0)) *
           XReal(-std::expm1(-c * n * ln2) / -std::expm1(-c * ln2));
  return XReal::exp2(c * lo) * XReal(-std::expm1(c * n * ln2) / -std::expm1(c * ln2));
}

// max over j in block k of 2^{c j}
XReal geo_max(int k, double c) {
  if (std::abs(c) < kFlat) return XReal(1.0);
  if (k > 1000) {
    if (c < 0) return XReal();
    throw std::overflow_error("block weight out of range");
  }
  const double lo = std::exp2(k) - 1.0;
  return XReal::exp2(c * (c > 0 ? lo + std::exp2(k) - 1.0 : lo));
}

// (sum_j (2^{c j})^q)^{1/q} over block k
XReal geo_lq(int k, double c, const Exponent& q) {
  if (q.is_infinite()) return geo_max(k, c);
  double qd = q.to_double();
  return geo(k, c * qd).pow(1.0 / qd);
}

void check_runs(const BlockProfile& P) {
  for (std::size_t i = 1; i < P.runs.size(); ++i)
    if (P.runs[i].k != P.runs[i - 1].k + 1)
      throw std::invalid_argument("block profile runs must have consecutive k");
}

// Besov-type per-level exponent g and constant factor for one block
std::pair<double, XReal> besov_level(const BlockProfile& P, const BlockRun& run, double s,
                                     const Exponent& p) {
  const double ip = inv(p);
  switch (P.layout) {
    case ProfileLayout::Nested:
      return {s - P.d * ip + P.tilt, run.value.abs()};
    case ProfileLayout::FullFill:
      return {s + P.tilt, run.value.abs()};
    case ProfileLayout::DisjointSlabs:
      return {s + P.tilt, run.value.abs() * XReal::exp2(run.log2_measure * ip)};
  }
  throw std::logic_error("unknown layout");
}

// Nested integral over consecutive runs with constant per-level terms a_k:
// sum_i S_i^{p/q} shell_i with S_i = S_{i-1} rho + a^q (max form when q = inf).
XReal nested_runs(const BlockProfile& P, const std::vector<BlockRun>& runs, double g,
                  const Exponent& p, const Exponent& q) {
  if (std::abs(g) >= kFlat)
    throw std::domain_error("nested block profile needs a flat level weight");
  const double pd = p.to_double();
  const bool sup = q.is_infinite();
  const double qd = sup ? 1.0 : q.to_double();
  const double decay = std::exp2(-P.d * qd / pd);
  const XReal shell(1.0 - std::exp2(-P.d));
  XSum I;
  XReal S;
  for (const auto& run : runs) {
    const XReal A = sup ? run.value.abs() : run.value.abs().pow(qd);
    const XReal fixed = sup ? A : A * XReal(1.0 / (1.0 - decay));
    const double n = std::exp2(run.k);
    double t = 0;
    bool settled = false;
    for (; t < n && t < 100000; t += 1) {
      XReal next = sup ? max(S * XReal(decay), A) : S * XReal(decay) + A;
      S = next;
      I.add(S.pow(pd / qd) * shell);
      double rel = ((S - fixed) / fixed).abs().to_double();
      if (rel < 1e-15) {
        settled = true;
        t += 1;
        break;
      }
    }
    if (t < n) {
      if (!settled && run.k < 60)
        throw std::runtime_error("nested block recursion failed to settle");
      XReal rest = run.k < 60 ? XReal(n - t) : block_size(run.k);
      I.add(rest * fixed.pow(pd / qd) * shell);
      S = fixed;
    }
  }
  // the finest level has no finer level carved out of it
  I.add(S.pow(pd / qd) * XReal(std::exp2(-P.d)));
  return I.total();
}

// block F integral int (sum_{j in block} (2^{js}|lambda|)^q chi)^{p/q}
XReal block_f_integral(const BlockProfile& P, const BlockRun& run, double s,
                       const Exponent& p, const Exponent& q) {
  const double pd = p.to_double();
  switch (P.layout) {
    case ProfileLayout::FullFill:
      return (run.value.abs() * geo_lq(run.k, s + P.tilt, q)).pow(pd);
    case ProfileLayout::DisjointSlabs:
      return run.value.abs().pow(pd) * XReal::exp2(run.log2_measure) *
             geo(run.k, (s + P.tilt) * pd);
    case ProfileLayout::Nested:
      return nested_runs(P, {run}, s + P.tilt - P.d / pd, p, q);
  }
  throw std::logic_error("unknown layout");
}

template <class F>
NormValue guarded(F&& f) {
  try {
    return NormValue::from(f(), false);
  } catch (const std::overflow_error&) {
    return NormValue::infinite();
  }
}

}  // namespace

NormValue trunc_besov_seq_norm(const BlockProfile& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b) {
  check_runs(l);
  return guarded([&] {
    LpAcc outer(r);
    for (const auto& run : l.runs) {
      auto [g, c] = besov_level(l, run, s, p);
      outer.add(XReal::exp2(b * run.k) * c * geo_lq(run.k, g, q));
    }
    return outer.value();
  });
}

NormValue trunc_f_seq_norm(const BlockProfile& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b) {
  if (p.is_infinite()) throw std::invalid_argument("F-type norms require p < inf");
  check_runs(l);
  return guarded([&] {
    LpAcc outer(r);
    for (const auto& run : l.runs)
      outer.add(XReal::exp2(b * run.k) *
                block_f_integral(l, run, s, p, q).pow(1.0 / p.to_double()));
    return outer.value();
  });
}

NormValue l1loc_proxy(const BlockProfile& l) {
  check_runs(l);
  const Exponent one(1), two(2);
  if (l.layout == ProfileLayout::DisjointSlabs) {
    XSum vol;
    for (const auto& run : l.runs) vol.add(block_size(run.k) * XReal::exp2(run.log2_measure));
    if (vol.total().to_double() > std::pow(kL1locWindow, l.d))
      throw std::domain_error("slab profile exceeds the local integrability window");
  }
  return guarded([&] {
    switch (l.layout) {
      case ProfileLayout::FullFill: {
        XSum sq;
        for (const auto& run : l.runs) sq.add(run.value.abs().pow(2.0) * geo(run.k, 2.0 * l.tilt));
        return sq.total().pow(0.5);
      }
      case ProfileLayout::DisjointSlabs: {
        XSum sum;
        for (const auto& run : l.runs)
          sum.add(run.value.abs() * XReal::exp2(run.log2_measure) * geo(run.k, l.tilt));
        return sum.total();
      }
      case ProfileLayout::Nested:
        return nested_runs(l, l.runs, l.tilt - l.d, one, two);
    }
    throw std::logic_error("unknown layout");
  });
}

NormValue continuity_proxy(const BlockProfile& l) {
  check_runs(l);
  return guarded([&] {
    if (l.layout == ProfileLayout::DisjointSlabs) {
      XReal top;
      for (const auto& run : l.runs) top = max(top, run.value.abs() * geo_max(run.k, l.tilt));
      return top;
    }
    XSum sum;
    for (const auto& run : l.runs) sum.add(run.value.abs() * geo(run.k, l.tilt));
    return sum.total();
  });
}

NormValue space_norm(const SpaceDescriptor& desc, const BlockProfile& l) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  if (desc.d != l.d) throw std::invalid_argument("descriptor dimension does not match sequence");
  const auto c = canonicalize_descriptor(desc).descriptor;
  const double s = c.s.to_double();
  const double b = c.b.to_double();
  if (c.family == Family::TB && desc.family != Family::B)
    return trunc_besov_seq_norm(l, s, c.p, c.q, *c.r, b);
  if (c.family == Family::TF) return trunc_f_seq_norm(l, s, c.p, c.q, *c.r, b);
  throw std::invalid_argument("block profiles support truncated B and F norms only");
}

}  // namespace ts

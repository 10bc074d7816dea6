#include "truncspaces/norms.hpp"

#include "truncspaces/dyadic.hpp"
#include "lp_acc.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <map>
#include <stdexcept>

namespace ts {

namespace {

double inv(const Exponent& e) { return e.reciprocal().to_double(); }

bool unit_or_inf(const Exponent& e) { return e.is_infinite() || e == Exponent(1); }

struct Level {
  double j;         // may be inf for deep lacunary levels
  double log2_1pj;  // log2(1 + j)
  int block;
  XReal B;  // 2^{j(s-d/p)} (sum_G ||lambda^{j,G}||_p^q)^{1/q}
};

std::vector<Level> levels_of(const WaveletSequence& l, double s, const Exponent& p,
                             const Exponent& q) {
  std::map<int, std::map<std::uint32_t, LpAcc>> acc;
  for (const auto& [key, v] : l.entries()) {
    auto& per_g = acc[key.j];
    auto it = per_g.try_emplace(key.G, p).first;
    it->second.add(l.magnitude(key, v));
  }
  std::vector<Level> out;
  const double g = s - l.dim() * inv(p);
  for (const auto& [j, per_g] : acc) {
    LpAcc over_g(q);
    for (const auto& [G, a] : per_g) over_g.add(a.value());
    double jj = j;
    out.push_back({jj, std::log2(1.0 + jj), block_of(j).k,
                   over_g.value() * XReal::exp2(g * jj)});
  }
  return out;
}

// 2^{g j + extra} at a profile level, saturating for unrepresentable j
XReal pow2_level(const LevelProfile& P, std::int64_t index, double g, double extra = 0.0) {
  if (std::abs(g) < 1e-12) return XReal::exp2(extra);
  double j = P.level(index);
  if (std::isinf(j)) {
    if (g < 0) return XReal();
    throw std::overflow_error("profile level weight out of range");
  }
  return XReal::exp2(g * j + extra);
}

double level_gap(const LevelProfile& P, std::int64_t a, std::int64_t b) {
  double lb = P.level(b);
  if (std::isinf(lb)) return INFINITY;
  return lb - P.level(a);
}

std::vector<Level> levels_of(const LevelProfile& P, double s, const Exponent& p,
                             const Exponent& /*q*/) {
  std::vector<Level> out;
  const double ip = inv(p);
  for (const auto& lv : P.levels) {
    XReal B;
    switch (P.layout) {
      case ProfileLayout::Nested:
        B = pow2_level(P, lv.index, s - P.d * ip + P.tilt) * lv.value.abs();
        break;
      case ProfileLayout::DisjointSlabs:
        B = pow2_level(P, lv.index, s - P.d * ip + P.tilt, lv.log2_count * ip) *
            lv.value.abs();
        break;
      case ProfileLayout::FullFill:
        B = pow2_level(P, lv.index, s + P.tilt) * lv.value.abs();
        break;
    }
    if (B.is_zero()) continue;
    out.push_back({P.level(lv.index), P.log2_level(lv.index), P.block(lv.index), B});
  }
  return out;
}

XReal classical_of(const std::vector<Level>& lv, const Exponent& q, double xi) {
  LpAcc acc(q);
  for (const auto& x : lv) acc.add(x.B * XReal::exp2(xi * x.log2_1pj));
  return acc.value();
}

XReal truncated_of(const std::vector<Level>& lv, const Exponent& q, const Exponent& r,
                   double b) {
  LpAcc outer(r);
  for (std::size_t i = 0; i < lv.size();) {
    int k = lv[i].block;
    LpAcc inner(q);
    for (; i < lv.size() && lv[i].block == k; ++i) inner.add(lv[i].B);
    outer.add(XReal::exp2(b * k) * inner.value());
  }
  return outer.value();
}

// sum_{k=a}^{b} 1/(1+k); falls back to the log-level difference past double range
double harmonic_range(const Level* prev, const Level& cur) {
  double a = prev ? prev->j + 1.0 : 0.0;
  double b = cur.j;
  if (std::isfinite(a) && std::isfinite(b) && b < 1e15) {
    if (b - a < 4096) {
      double h = 0.0;
      for (double k = b; k >= a; k -= 1.0) h += 1.0 / (1.0 + k);
      return h;
    }
    return boost::math::digamma(b + 2.0) - boost::math::digamma(a + 1.0);
  }
  return std::log(2.0) * (cur.log2_1pj - (prev ? prev->log2_1pj : 0.0));
}

XReal star_of(const std::vector<Level>& lv, const Exponent& q, const Exponent& r) {
  if (r.is_infinite()) throw std::invalid_argument("starred norm requires r < inf");
  std::vector<XReal> tails(lv.size());
  LpAcc tail(q);
  for (std::size_t i = lv.size(); i-- > 0;) {
    tail.add(lv[i].B);
    tails[i] = tail.value();
  }
  LpAcc outer(r);
  for (std::size_t i = 0; i < lv.size(); ++i)
    outer.add_weighted(tails[i], XReal(harmonic_range(i ? &lv[i - 1] : nullptr, lv[i])));
  return outer.value();
}

bool exact_for(std::initializer_list<Exponent> es) {
  for (const auto& e : es)
    if (!unit_or_inf(e)) return false;
  return true;
}

template <class F>
NormValue guarded(F&& f, bool exact) {
  try {
    return NormValue::from(f(), exact);
  } catch (const std::overflow_error&) {
    return NormValue::infinite();
  }
}

void require_finite_p(const Exponent& p) {
  if (p.is_infinite()) throw std::invalid_argument("F-type norms require p < inf");
}

// F-type integral of a set of entries: int (sum 2^{jsq}|lambda|^q chi)^{p/q}
template <class Pred>
XReal f_integral(const WaveletSequence& l, double s, const Exponent& p, const Exponent& q,
                 Pred keep) {
  std::vector<DyadicCell> cells;
  const bool sup = q.is_infinite();
  const double qd = sup ? 1.0 : q.to_double();
  for (const auto& [key, v] : l.entries()) {
    if (!keep(key)) continue;
    XReal w = XReal::exp2(s * key.j) * l.magnitude(key, v);
    cells.push_back({key.j, key.m, sup ? w : w.pow(qd)});
  }
  DyadicForest forest(l.dim(), std::move(cells), sup ? PathCombine::Max : PathCombine::Sum);
  return forest.integral(p.to_double() / qd);
}

XReal profile_f_integral(const LevelProfile& P, double s, const Exponent& p, const Exponent& q) {
  require_finite_p(p);
  const double pd = p.to_double();
  const double ip = 1.0 / pd;
  const bool sup = q.is_infinite();
  const double qd = sup ? 1.0 : q.to_double();
  const double g = s + P.tilt - P.d * ip;
  switch (P.layout) {
    case ProfileLayout::FullFill: {
      LpAcc acc(q);
      for (const auto& lv : P.levels) acc.add(pow2_level(P, lv.index, s + P.tilt) * lv.value.abs());
      return acc.value().pow(pd);
    }
    case ProfileLayout::DisjointSlabs: {
      XSum I;
      for (const auto& lv : P.levels)
        I.add(pow2_level(P, lv.index, g).pow(pd) * lv.value.abs().pow(pd) *
              XReal::exp2(lv.log2_count));
      return I.total();
    }
    case ProfileLayout::Nested: {
      XSum I;
      XReal S;  // running sum (or max) rescaled to the current level
      for (std::size_t i = 0; i < P.levels.size(); ++i) {
        const auto& lv = P.levels[i];
        XReal a = pow2_level(P, lv.index, g) * lv.value.abs();
        if (i > 0) {
          double gap = level_gap(P, P.levels[i - 1].index, lv.index);
          S = S * XReal::exp2(-gap * P.d * ip * qd);
        }
        S = sup ? max(S, a) : S + a.pow(qd);
        XReal shell(1.0);
        if (i + 1 < P.levels.size()) {
          double gap = level_gap(P, lv.index, P.levels[i + 1].index);
          shell = XReal(1.0) - XReal::exp2(-gap * P.d);
        }
        I.add(S.pow(pd / qd) * shell);
      }
      return I.total();
    }
  }
  throw std::logic_error("unknown layout");
}

LevelProfile sub_profile(const LevelProfile& P, std::vector<ProfileLevel> levels) {
  LevelProfile out;
  out.d = P.d;
  out.layout = P.layout;
  out.lacunary = P.lacunary;
  out.tilt = P.tilt;
  out.levels = std::move(levels);
  return out;
}

}  // namespace

NormValue NormValue::from(const XReal& x, bool exact) {
  NormValue out;
  out.value = x.abs().to_double();
  out.log2_value = x.log2();
  out.exact = exact;
  return out;
}

NormValue NormValue::infinite() {
  NormValue out;
  out.value = INFINITY;
  out.log2_value = INFINITY;
  return out;
}

double norm_ratio(const NormValue& num, const NormValue& den) {
  if (den.is_zero()) throw std::domain_error("ratio with zero denominator");
  if (num.is_zero()) return 0.0;
  if (num.is_infinite()) return INFINITY;
  if (den.is_infinite()) return 0.0;
  return std::exp2(num.log2_value - den.log2_value);
}

NormValue besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                         const Exponent& q, double xi) {
  return guarded([&] { return classical_of(levels_of(l, s, p, q), q, xi); },
                 exact_for({p, q}));
}

NormValue besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                         const Exponent& q, double xi) {
  return guarded([&] { return classical_of(levels_of(l, s, p, q), q, xi); },
                 exact_for({p, q}));
}

NormValue trunc_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b) {
  return guarded([&] { return truncated_of(levels_of(l, s, p, q), q, r, b); },
                 exact_for({p, q, r}));
}

NormValue trunc_besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b) {
  return guarded([&] { return truncated_of(levels_of(l, s, p, q), q, r, b); },
                 exact_for({p, q, r}));
}

NormValue star_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                              const Exponent& q, const Exponent& r) {
  if (r.is_infinite()) throw std::invalid_argument("starred norm requires r < inf");
  return guarded([&] { return star_of(levels_of(l, s, p, q), q, r); }, false);
}

NormValue star_besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                              const Exponent& q, const Exponent& r) {
  if (r.is_infinite()) throw std::invalid_argument("starred norm requires r < inf");
  return guarded([&] { return star_of(levels_of(l, s, p, q), q, r); }, false);
}

NormValue bstar_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b) {
  if (b == 0.0) throw std::invalid_argument("bstar form requires b != 0");
  return guarded(
      [&] {
        auto lv = levels_of(l, s, p, q);
        LpAcc outer(r);
        if (lv.empty()) return outer.value();
        const double jmax = lv.back().j;
        if (b > 0) {
          for (int j = 0; std::exp2(j) - 1.0 <= jmax; ++j) {
            LpAcc inner(q);
            for (const auto& x : lv)
              if (x.j >= std::exp2(j) - 1.0) inner.add(x.B);
            outer.add(XReal::exp2(b * j) * inner.value());
          }
          return outer.value();
        }
        int j = 0;
        XReal full;
        for (;; ++j) {
          LpAcc inner(q);
          for (const auto& x : lv)
            if (x.j <= std::exp2(j)) inner.add(x.B);
          full = inner.value();
          outer.add(XReal::exp2(b * j) * full);
          if (std::exp2(j) >= jmax) break;
        }
        if (r.is_infinite()) return outer.value();
        // remaining terms see the whole sequence: geometric tail
        double rd = r.to_double();
        double ratio = std::exp2(b * rd);
        XReal tail = full.pow(rd) * XReal::exp2(b * rd * (j + 1)) * XReal(1.0 / (1.0 - ratio));
        outer.add_weighted(tail.pow(1.0 / rd), XReal(1.0));
        return outer.value();
      },
      false);
}

std::vector<double> triviality_partial_sums(const WaveletSequence& l, double s,
                                            const Exponent& p, const Exponent& q,
                                            const Exponent& r, int j_max) {
  if (r.is_infinite()) throw std::invalid_argument("triviality sums require r < inf");
  auto lv = levels_of(l, s, p, q);
  const double rd = r.to_double();
  std::vector<double> out;
  XSum S;
  for (int J = 0; J <= j_max; ++J) {
    LpAcc inner(q);
    for (const auto& x : lv)
      if (x.j <= std::exp2(J)) inner.add(x.B);
    S.add(inner.value().pow(rd));
    out.push_back(S.total().to_double());
  }
  return out;
}

NormValue f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                     const Exponent& q) {
  require_finite_p(p);
  return guarded(
      [&] {
        return f_integral(l, s, p, q, [](const WaveletKey&) { return true; })
            .pow(1.0 / p.to_double());
      },
      exact_for({p, q}));
}

NormValue f_seq_norm(const LevelProfile& l, double s, const Exponent& p, const Exponent& q) {
  require_finite_p(p);
  return guarded([&] { return profile_f_integral(l, s, p, q).pow(1.0 / p.to_double()); },
                 exact_for({p, q}));
}

NormValue trunc_f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b) {
  require_finite_p(p);
  return guarded(
      [&] {
        LpAcc outer(r);
        if (l.empty()) return outer.value();
        int kmax = block_of(l.max_level()).k;
        for (int k = 0; k <= kmax; ++k) {
          XReal I = f_integral(l, s, p, q,
                               [k](const WaveletKey& key) { return block_of(key.j).k == k; });
          if (!I.is_zero()) outer.add(XReal::exp2(b * k) * I.pow(1.0 / p.to_double()));
        }
        return outer.value();
      },
      exact_for({p, q, r}));
}

NormValue trunc_f_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b) {
  require_finite_p(p);
  return guarded(
      [&] {
        LpAcc outer(r);
        for (std::size_t i = 0; i < l.levels.size();) {
          int k = l.block(l.levels[i].index);
          std::vector<ProfileLevel> part;
          for (; i < l.levels.size() && l.block(l.levels[i].index) == k; ++i)
            part.push_back(l.levels[i]);
          XReal I = profile_f_integral(sub_profile(l, std::move(part)), s, p, q);
          outer.add(XReal::exp2(b * k) * I.pow(1.0 / p.to_double()));
        }
        return outer.value();
      },
      exact_for({p, q, r}));
}

NormValue star_f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                          const Exponent& q, const Exponent& r) {
  require_finite_p(p);
  if (r.is_infinite()) throw std::invalid_argument("starred norm requires r < inf");
  return guarded(
      [&] {
        LpAcc outer(r);
        if (l.empty()) return outer.value();
        for (int k = 0; (std::int64_t{1} << k) - 1 <= l.max_level(); ++k) {
          std::int64_t lo = (std::int64_t{1} << k) - 1;
          XReal I = f_integral(l, s, p, q, [lo](const WaveletKey& key) { return key.j >= lo; });
          outer.add(I.pow(1.0 / p.to_double()));
        }
        return outer.value();
      },
      false);
}

NormValue star_f_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                          const Exponent& q, const Exponent& r) {
  require_finite_p(p);
  if (r.is_infinite()) throw std::invalid_argument("starred norm requires r < inf");
  return guarded(
      [&] {
        LpAcc outer(r);
        if (l.levels.empty()) return outer.value();
        double jmax = l.level(l.levels.back().index);
        for (int k = 0; std::exp2(k) - 1.0 <= jmax && k < 8192; ++k) {
          std::vector<ProfileLevel> part;
          for (const auto& lv : l.levels)
            if (l.level(lv.index) >= std::exp2(k) - 1.0) part.push_back(lv);
          XReal I = profile_f_integral(sub_profile(l, std::move(part)), s, p, q);
          outer.add(I.pow(1.0 / p.to_double()));
        }
        return outer.value();
      },
      false);
}

NormValue l1loc_proxy(const WaveletSequence& l) {
  return guarded(
      [&] {
        return f_integral(l, 0.0, Exponent(1), Exponent(2), [](const WaveletKey& key) {
          double side = kL1locWindow * std::exp2(key.j);
          for (auto m : key.m)
            if (m < 0 || static_cast<double>(m) + 1.0 > side) return false;
          return true;
        });
      },
      false);
}

NormValue l1loc_proxy(const LevelProfile& l) {
  if (l.layout == ProfileLayout::DisjointSlabs) {
    XSum vol;
    for (const auto& lv : l.levels)
      vol.add(XReal::exp2(lv.log2_count - l.level(lv.index) * l.d));
    if (vol.total().to_double() > std::pow(kL1locWindow, l.d))
      throw std::domain_error("slab profile exceeds the local integrability window");
  }
  return guarded([&] { return profile_f_integral(l, 0.0, Exponent(1), Exponent(2)); }, false);
}

NormValue continuity_proxy(const WaveletSequence& l) {
  return guarded(
      [&] {
        std::vector<DyadicCell> cells;
        for (const auto& [key, v] : l.entries())
          cells.push_back({key.j, key.m, l.magnitude(key, v)});
        return DyadicForest(l.dim(), std::move(cells), PathCombine::Sum).sup();
      },
      true);
}

NormValue continuity_proxy(const LevelProfile& l) {
  return guarded(
      [&] {
        XSum sum;
        XReal top;
        for (const auto& lv : l.levels) {
          XReal c = pow2_level(l, lv.index, l.tilt) * lv.value.abs();
          sum.add(c);
          top = max(top, c);
        }
        return l.layout == ProfileLayout::DisjointSlabs ? top : sum.total();
      },
      true);
}

namespace {

template <class Seq>
NormValue dispatch(const SpaceDescriptor& desc, const Seq& l, int dim) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  if (desc.d != dim) throw std::invalid_argument("descriptor dimension does not match sequence");
  auto canon = canonicalize_descriptor(desc);
  const auto& c = canon.descriptor;
  const double s = c.s.to_double();
  const double b = c.b.to_double();
  switch (c.family) {
    case Family::TB:
      if (desc.family == Family::B) return besov_seq_norm(l, s, c.p, c.q, b);
      return trunc_besov_seq_norm(l, s, c.p, c.q, *c.r, b);
    case Family::TF:
      return trunc_f_seq_norm(l, s, c.p, c.q, *c.r, b);
    case Family::TstarB:
      return star_besov_seq_norm(l, s, c.p, c.q, *c.r);
    case Family::TstarF:
      return star_f_seq_norm(l, s, c.p, c.q, *c.r);
    case Family::F:
      if (canon.needs_inner_truncation)
        throw OutOfPaperRange("F with b != 0 has no sequence-space norm here");
      return f_seq_norm(l, s, c.p, c.q);
    default:
      throw std::invalid_argument("family " + std::string(family_tag(c.family)) +
                                  " has no wavelet sequence norm");
  }
}

}  // namespace

NormValue space_norm(const SpaceDescriptor& desc, const WaveletSequence& l) {
  return dispatch(desc, l, l.dim());
}

NormValue space_norm(const SpaceDescriptor& desc, const LevelProfile& l) {
  return dispatch(desc, l, l.d);
}

NormValue space_norm(const SpaceDescriptor& desc, const Extremal& l) {
  return std::visit([&](const auto& x) { return space_norm(desc, x); }, l);
}

}  // namespace ts

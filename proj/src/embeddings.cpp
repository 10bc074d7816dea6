#include "truncspaces/embeddings.hpp"

#include <array>
#include <cmath>

namespace ts {

namespace {

struct Params {
  Family family;
  Scalar s;
  Exponent p;
  Exponent q;
  Exponent r;
  Scalar b;
  int d;

  Scalar gap() const { return s - Scalar(d) * p.reciprocal(); }
};

double dbl(const Scalar& x) { return x.to_double(); }
double dbl(const Exponent& e) { return e.to_double(); }
double inv(const Exponent& e) { return e.reciprocal().to_double(); }
double mid(double a, double b) { return 0.5 * (a + b); }

Params canonical(const SpaceDescriptor& desc) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  switch (desc.family) {
    case Family::TB:
    case Family::TF:
    case Family::B:
    case Family::BdiffZero:
    case Family::Lip:
      break;
    default:
      throw UnsupportedPair("no embedding theorem for family " +
                            std::string(family_tag(desc.family)));
  }
  auto c = canonicalize_descriptor(desc).descriptor;
  if (c.b == Scalar(0)) throw UnsupportedPair("embedding theorems require b != 0");
  return {c.family, c.s, c.p, c.q, *c.r, c.b, c.d};
}

EmbeddingVerdict holds(std::string cond, std::string cite) {
  return {VerdictStatus::Holds, std::move(cond), std::nullopt, std::move(cite)};
}

EmbeddingVerdict fails(std::string cond, WitnessSpec w, std::string cite) {
  return {VerdictStatus::Fails, std::move(cond), std::move(w), std::move(cite)};
}

EmbeddingVerdict unknown(std::string cond, std::string cite) {
  return {VerdictStatus::UnknownPerPaper, std::move(cond), std::nullopt, std::move(cite)};
}

WitnessSpec witness(WitnessKind kind, const Params& src,
                    std::initializer_list<std::pair<const std::string, double>> extra) {
  WitnessSpec w;
  w.kind = kind;
  w.params = {{"s", dbl(src.s)}, {"p", dbl(src.p)}, {"d", src.d}};
  for (const auto& [k, v] : extra) w.params[k] = v;
  return w;
}

// a single cube at the finest level, tilted to unit source weight
WitnessSpec spike(const Params& src) {
  return witness(WitnessKind::Spike, src, {{"a", -dbl(src.gap())}});
}

WitnessSpec lacunary(const Params& src, double eps, double eta = 0.0) {
  return witness(WitnessKind::LacunaryDiagonal, src, {{"eps", eps}, {"eta", eta}});
}

WitnessSpec block(bool full, const Params& src, double e, double beta = 0.0) {
  return witness(full ? WitnessKind::BlockPowerFull : WitnessKind::BlockPower, src,
                 {{"e", e}, {"beta", beta}});
}

// Shared tail of the five-clause tables: equal smoothness gap, "small"
// branch when q_small holds, otherwise compare e0 = b0 + 1/x0 vs e1 = b1 + 1/x1.
struct Table {
  std::string thm;
  std::string cite;
  // clause ids in order (ii)..(v)
  std::array<std::string, 4> ids{"(ii)", "(iii)", "(iv)", "(v)"};
};

EmbeddingVerdict five_clause(const Table& t, const Params& a, const Params& c, bool small,
                             const Scalar& e0, const Scalar& e1, bool full_block,
                             bool b_reversed = false) {
  if (small) {
    if (a.b > c.b) return holds(t.thm + t.ids[0], t.cite);
    if (a.b == c.b && a.r <= c.r) return holds(t.thm + t.ids[1], t.cite);
    if (a.b < c.b)
      return fails(t.thm + (b_reversed ? " needs b1<b0" : " needs b0>b1"),
                   lacunary(a, mid(dbl(a.b), dbl(c.b))), t.cite);
    return fails(t.thm + " needs r0<=r1 when b0=b1",
                 lacunary(a, dbl(a.b), mid(inv(a.r), inv(c.r))), t.cite);
  }
  if (e0 > e1) return holds(t.thm + t.ids[2], t.cite);
  if (e0 == e1 && a.r <= c.r) return holds(t.thm + t.ids[3], t.cite);
  if (e0 < e1)
    return fails(t.thm + " needs the b+1/q balance", block(full_block, a, mid(dbl(e0), dbl(e1))),
                 t.cite);
  return fails(t.thm + " needs r0<=r1 at the b+1/q balance",
               block(full_block, a, dbl(e0), mid(inv(a.r), inv(c.r))), t.cite);
}

std::string b_prefix(const SpaceDescriptor& src, const SpaceDescriptor& dst,
                     std::string& cite) {
  bool bs = src.family == Family::B, bd = dst.family == Family::B;
  if (bs && bd) {
    cite = "Remark 10.3";
    return "Rem10.3";
  }
  if (bs) {
    cite = "Cor 11.2";
    return "Cor11.2";
  }
  if (bd) {
    cite = "Cor 11.4";
    return "Cor11.4";
  }
  cite = "Thm 10.1";
  return "Thm10.1";
}

EmbeddingVerdict thm_10_1(const SpaceDescriptor& src0, const SpaceDescriptor& dst0,
                          const Params& a, const Params& c) {
  Table t;
  t.thm = b_prefix(src0, dst0, t.cite);
  const bool classical = t.thm == "Rem10.3";
  if (classical) t.ids = {"(ii)", "(ii)", "(iii)", "(iii)"};
  if (a.p > c.p)
    return fails(t.thm + " needs p0<=p1",
                 witness(WitnessKind::SpatialSpread, a, {{"eps", mid(inv(a.p), inv(c.p))}}),
                 t.cite);
  const Scalar delta = a.gap() - c.gap();
  if (delta > Scalar(0)) return holds(t.thm + "(i)", t.cite);
  if (delta < Scalar(0)) return fails(t.thm + " needs s0-d/p0>=s1-d/p1", spike(a), t.cite);
  return five_clause(t, a, c, a.q <= c.q, a.b + a.q.reciprocal(), c.b + c.q.reciprocal(),
                     false);
}

// T F_{p,q0} -> T B_{p,q1}
EmbeddingVerdict thm_12_1(const Params& a, const Params& c) {
  Table t{"Thm12.1", "Thm 12.1"};
  if (a.s > c.s) return holds("Thm12.1(i)", t.cite);
  if (a.s < c.s) return fails("Thm12.1 needs s0>=s1", spike(a), t.cite);
  const Exponent M = max(a.p, a.q);
  return five_clause(t, a, c, c.q >= M, a.b + M.reciprocal(), c.b + c.q.reciprocal(),
                     a.q > a.p);
}

// T B_{p,q0} -> T F_{p,q1}
EmbeddingVerdict thm_12_2(const Params& a, const Params& c) {
  Table t{"Thm12.2", "Thm 12.2"};
  if (a.s > c.s) return holds("Thm12.2(i)", t.cite);
  if (a.s < c.s) return fails("Thm12.2 needs s0>=s1", spike(a), t.cite);
  const Exponent m = min(c.p, c.q);
  return five_clause(t, a, c, a.q <= m, a.b + a.q.reciprocal(), c.b + m.reciprocal(),
                     c.q <= c.p);
}

EmbeddingVerdict thm_13_1(const Params& a, const Params& c) {
  Table t{"Thm13.1", "Thm 13.1"};
  if (a.p > c.p) throw UnsupportedPair("F-F embeddings are characterized only for p0<=p1");
  const Scalar delta = a.gap() - c.gap();
  if (delta > Scalar(0)) return holds("Thm13.1(i)", t.cite);
  if (delta < Scalar(0)) return fails("Thm13.1 needs s0-d/p0>=s1-d/p1", spike(a), t.cite);
  if (a.p < c.p) {
    t.ids = {"(ii)", "(iii)", "", ""};
    return five_clause(t, a, c, true, Scalar(0), Scalar(0), false);
  }
  t.ids = {"(iv)", "(v)", "(vi)", "(vii)"};
  return five_clause(t, a, c, a.q <= c.q, a.b + a.q.reciprocal(), c.b + c.q.reciprocal(),
                     true);
}

// T F_{p0} -> T B_{p1}, p0 < p1
EmbeddingVerdict thm_14_1(const Params& a, const Params& c) {
  Table t{"Thm14.1", "Thm 14.1"};
  if (!(c.s < a.s)) throw UnsupportedPair("Thm 14.1 assumes s1 < s0");
  const Scalar delta = a.gap() - c.gap();
  if (delta > Scalar(0)) return holds("Thm14.1(i)", t.cite);
  if (delta < Scalar(0)) return fails("Thm14.1 needs s0-d/p0>=s1-d/p1", spike(a), t.cite);
  return five_clause(t, a, c, a.p <= c.q, a.b + a.p.reciprocal(), c.b + c.q.reciprocal(),
                     false, true);
}

// T B_{p0} -> T F_{p1}, p0 < p1
EmbeddingVerdict thm_14_2(const Params& a, const Params& c) {
  Table t{"Thm14.2", "Thm 14.2"};
  if (!(c.s < a.s)) throw UnsupportedPair("Thm 14.2 assumes s1 < s0");
  const Scalar delta = a.gap() - c.gap();
  if (delta > Scalar(0)) return holds("Thm14.2(i)", t.cite);
  if (delta < Scalar(0)) return fails("Thm14.2 needs s0-d/p0>=s1-d/p1", spike(a), t.cite);
  return five_clause(t, a, c, a.q <= c.p, a.b + a.q.reciprocal(), c.b + c.p.reciprocal(),
                     false, true);
}

}  // namespace

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "Holds";
    case VerdictStatus::Fails: return "Fails";
    case VerdictStatus::UnknownPerPaper: return "UnknownPerPaper";
  }
  return "?";
}

EmbeddingVerdict embeds(const SpaceDescriptor& src, const SpaceDescriptor& dst) {
  if (src.d != dst.d) throw UnsupportedPair("embeddings compare spaces of equal dimension only");
  const Params a = canonical(src);
  const Params c = canonical(dst);
  const bool fa = a.family == Family::TF, fc = c.family == Family::TF;
  if (!fa && !fc) return thm_10_1(src, dst, a, c);
  if (fa && fc) return thm_13_1(a, c);
  if (a.p == c.p) return fa ? thm_12_1(a, c) : thm_12_2(a, c);
  if (a.p < c.p) return fa ? thm_14_1(a, c) : thm_14_2(a, c);
  throw UnsupportedPair("mixed B/F embeddings with p0>p1 are not characterized");
}

namespace {

WitnessSpec full_level(const Params& a) {
  return witness(WitnessKind::FullFillLevel, a, {});
}

WitnessSpec lacunary_full(const Params& a, double eps, double eta = 0.0) {
  return witness(WitnessKind::LacunaryFullFill, a, {{"eps", eps}, {"eta", eta}});
}

// Disjoint slabs of per-level measure 2^{-k(1+alpha)} (1+k)^{-theta} in block k,
// shifted so the total measure stays inside the local window.
WitnessSpec slabs(const Params& a, double e, double beta, double alpha, double theta,
                  double k0 = 4.0) {
  double bound;
  if (alpha > 0)
    bound = std::exp2(-alpha * k0) / -std::expm1(-alpha * std::log(2.0));
  else
    bound = std::pow(1.0 + k0, -theta) + std::pow(1.0 + k0, 1.0 - theta) / (theta - 1.0);
  double shift = std::max(0.0, std::ceil(std::log2(bound / 4.0)));
  return witness(WitnessKind::BlockSlabs, a,
                 {{"e", e}, {"beta", beta}, {"alpha", alpha}, {"theta", theta},
                  {"k0", k0}, {"shift", shift}});
}

}  // namespace

EmbeddingVerdict embeds_L1loc(const SpaceDescriptor& desc) {
  const Params a = canonical(desc);
  const Scalar one(1);
  const Scalar ip = a.p.reciprocal();
  const Scalar iq = a.q.reciprocal();
  const Scalar sigma = Scalar(a.d) * max(ip - one, Scalar(0));
  if (a.family == Family::TB) {
    const std::string cite = "Thm 15.3";
    if (a.s > sigma) return holds("Thm15.3(i)", cite);
    if (a.s < sigma) {
      if (a.p <= Exponent(1)) return fails("Thm15.3 needs s>=d(1/p-1)", spike(a), cite);
      return fails("Thm15.3 needs s>=0", full_level(a), cite);
    }
    if (a.p <= Exponent(1)) {
      if (a.q <= Exponent(1)) {
        if (a.b > Scalar(0)) return holds("Thm15.3(ii)", cite);
        return fails("Thm15.3 needs b>0", lacunary(a, dbl(a.b) / 2), cite);
      }
      const Scalar thr = one - iq;
      if (a.b > thr) return holds(a.r <= Exponent(1) ? "Thm15.3(iii)" : "Thm15.3(iv)", cite);
      if (a.b == thr && a.r <= Exponent(1)) return holds("Thm15.3(iii)", cite);
      if (a.b < thr)
        return fails("Thm15.3 needs b>=1-1/q", block(false, a, mid(dbl(a.b + iq), 1.0)), cite);
      return fails("Thm15.3 needs r<=1 at b=1-1/q", block(false, a, 1.0, mid(inv(a.r), 1.0)),
                   cite);
    }
    if (a.p <= Exponent(2)) {
      if (a.q <= a.p) {
        if (a.b > Scalar(0)) return holds("Thm15.3(v)", cite);
        return fails("Thm15.3 needs b>0", lacunary_full(a, dbl(a.b) / 2), cite);
      }
      const Scalar thr = ip - iq;
      if (a.b > thr) return holds(a.r <= a.p ? "Thm15.3(vi)" : "Thm15.3(vii)", cite);
      if (a.b == thr && a.r <= a.p) return holds("Thm15.3(vi)", cite);
      if (a.b < thr) {
        double g0 = dbl(thr - a.b);
        return fails("Thm15.3 needs b>=1/p-1/q", slabs(a, -2.0 * g0 / 3.0, 0.0, g0 / 3.0, 0.0),
                     cite);
      }
      double g = inv(a.p) - inv(a.r);
      // growth is only logarithmic here; a later first block makes it visible
      double delta = g / 2, sig = 0.6 * g;
      return fails("Thm15.3 needs r<=p at b=1/p-1/q",
                   slabs(a, 0.0, -(delta + sig), 0.0, 1.0 + delta, 16.0), cite);
    }
    if (a.q <= Exponent(2)) {
      if (a.b > Scalar(0)) return holds("Thm15.3(viii)", cite);
      return fails("Thm15.3 needs b>0", lacunary_full(a, dbl(a.b) / 2), cite);
    }
    const Scalar thr = Scalar::fraction(1, 2) - iq;
    if (a.b > thr) return holds(a.r <= Exponent(2) ? "Thm15.3(ix)" : "Thm15.3(x)", cite);
    if (a.b == thr && a.r <= Exponent(2)) return holds("Thm15.3(ix)", cite);
    if (a.b < thr)
      return fails("Thm15.3 needs b>=1/2-1/q", block(true, a, mid(dbl(a.b + iq), 0.5)), cite);
    return fails("Thm15.3 needs r<=2 at b=1/2-1/q", block(true, a, 0.5, mid(inv(a.r), 0.5)),
                 cite);
  }
  // truncated F: sufficiency (i)-(vii), necessity (i)-(vi) and (vii) for r > 2
  const std::string cite = "local integrability theorem for truncated F-spaces";
  if (a.s > sigma) return holds("ThmFL1loc(i)", cite);
  if (a.s < sigma) {
    if (a.p < Exponent(1)) return fails("ThmFL1loc needs s>=d(1/p-1)", spike(a), cite);
    return fails("ThmFL1loc needs s>=0", full_level(a), cite);
  }
  if (a.p < Exponent(1)) {
    if (a.b > Scalar(0)) return holds(a.r <= Exponent(1) ? "ThmFL1loc(ii)" : "ThmFL1loc(iii)", cite);
    return fails("ThmFL1loc needs b>0", lacunary(a, dbl(a.b) / 2), cite);
  }
  const Exponent rmin = min(Exponent(2), a.p);
  if (a.q <= Exponent(2)) {
    if (a.b > Scalar(0)) return holds(a.r <= rmin ? "ThmFL1loc(iv)" : "ThmFL1loc(v)", cite);
    return fails("ThmFL1loc needs b>0", lacunary_full(a, dbl(a.b) / 2), cite);
  }
  const Scalar thr = Scalar::fraction(1, 2) - iq;
  if (a.b == thr && a.r <= rmin) return holds("ThmFL1loc(vi)", cite);
  if (a.b > thr) return holds(a.r <= rmin ? "ThmFL1loc(vi)" : "ThmFL1loc(vii)", cite);
  if (a.b < thr)
    return fails("ThmFL1loc needs b>=1/2-1/q", block(true, a, mid(dbl(a.b + iq), 0.5)), cite);
  if (a.r > Exponent(2))
    return fails("ThmFL1loc needs r<=min{2,p} at b=1/2-1/q",
                 block(true, a, 0.5, mid(inv(a.r), 0.5)), cite);
  return unknown("ThmFL1loc(vii) necessity open for min{2,p}<r<=2", cite);
}

EmbeddingVerdict embeds_C(const SpaceDescriptor& desc) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  const auto canon = canonicalize_descriptor(desc).descriptor;
  const bool sufficiency_only = canon.b == Scalar(0);
  if (sufficiency_only && canon.family != Family::TB && canon.family != Family::TF)
    throw UnsupportedPair("no continuity theorem for this family");
  const Params a = sufficiency_only
                       ? Params{canon.family, canon.s, canon.p, canon.q, *canon.r, canon.b, canon.d}
                       : canonical(desc);
  const Scalar dp = Scalar(a.d) * a.p.reciprocal();
  const bool tb = a.family == Family::TB;
  const std::string thm = tb ? "Thm16.2" : "Thm16.5";
  const std::string cite = tb ? "Thm 16.2" : "Thm 16.5";
  auto no_necessity = [&](EmbeddingVerdict v) {
    if (sufficiency_only && v.status == VerdictStatus::Fails)
      return unknown(thm + " necessity needs b!=0", cite);
    return v;
  };
  if (a.s > dp) return holds(thm + "(i)", cite);
  if (a.s < dp) return no_necessity(fails(thm + " needs s>=d/p", spike(a), cite));
  const Scalar zero(0);
  const Exponent one(1);
  if (tb) {
    if (a.q <= one) {
      if (a.r <= one && a.b >= zero) return holds("Thm16.2(ii)", cite);
      if (a.r > one && a.b > zero) return holds("Thm16.2(iv)", cite);
      return no_necessity(fails("Thm16.2 needs b>0", lacunary(a, dbl(a.b) / 2), cite));
    }
    const Scalar thr = Scalar(1) - a.q.reciprocal();
    if (a.r <= one && a.b >= thr) return holds("Thm16.2(iii)", cite);
    if (a.r > one && a.b > thr) return holds("Thm16.2(v)", cite);
    if (a.b < thr)
      return no_necessity(fails("Thm16.2 needs b>=1/q'",
                                block(false, a, mid(dbl(a.b + a.q.reciprocal()), 1.0)), cite));
    return no_necessity(fails("Thm16.2 needs r<=1 at b=1/q'",
                              block(false, a, 1.0, mid(inv(a.r), 1.0)), cite));
  }
  if (a.p <= one) {
    if (a.r > one && a.b > zero) return holds("Thm16.5(ii)", cite);
    if (a.r <= one && a.b >= zero) return holds("Thm16.5(iii)", cite);
    return no_necessity(fails("Thm16.5 needs b>0", lacunary(a, dbl(a.b) / 2), cite));
  }
  const Scalar thr = Scalar(1) - a.p.reciprocal();
  if (a.r > one && a.b > thr) return holds("Thm16.5(iv)", cite);
  if (a.r <= one && a.b >= thr) return holds("Thm16.5(v)", cite);
  if (a.b < thr)
    return no_necessity(fails("Thm16.5 needs b>=1/p'",
                              block(false, a, mid(dbl(a.b + a.p.reciprocal()), 1.0)), cite));
  return no_necessity(
      fails("Thm16.5 needs r<=1 at b=1/p'", block(false, a, 1.0, mid(inv(a.r), 1.0)), cite));
}

EmbeddingVerdict gm_embeds_Lp(const Scalar& s, const Exponent& p, const Exponent& q,
                              const Exponent& r, const Scalar& b, int d) {
  const std::string cite = "GM embedding theorem into L_p";
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const Scalar lo = Scalar(2 * d) / Scalar(d + 1);
  if (p.is_infinite() || !(p.value() > lo) || q.is_infinite() || b == Scalar(0))
    throw UnsupportedPair("GM embedding needs 2d/(d+1)<p<inf, q<inf, b!=0");
  if (s > Scalar(0)) return holds("ThmBLpGM(i)", cite);
  if (s < Scalar(0)) return {VerdictStatus::Fails, "ThmBLpGM needs s>=0", std::nullopt, cite};
  if (q <= p) {
    if (b > Scalar(0)) return holds("ThmBLpGM(iv)", cite);
    return {VerdictStatus::Fails, "ThmBLpGM needs b>0", std::nullopt, cite};
  }
  const Scalar thr = p.reciprocal() - q.reciprocal();
  if (b > thr) return holds("ThmBLpGM(ii)", cite);
  if (b == thr && r <= p) return holds("ThmBLpGM(iii)", cite);
  return {VerdictStatus::Fails,
          b < thr ? "ThmBLpGM needs b>=1/p-1/q" : "ThmBLpGM needs r<=p at b=1/p-1/q",
          std::nullopt, cite};
}

EmbeddingVerdict embeds_lorentz(const SpaceDescriptor& src, const SpaceDescriptor& dst) {
  for (const auto* x : {&src, &dst}) {
    if (auto v = validate_descriptor(*x); !v.empty()) throw ValidationError(v);
    if (x->family != Family::TLorentz && x->family != Family::LorentzZygmund)
      throw UnsupportedPair("Lorentz embeddings compare Lorentz sequence spaces only");
  }
  if (*src.u != *dst.u) throw UnsupportedPair("Lorentz embeddings need equal u");
  const std::string cite = "Prop 17.19";
  if (src == dst) return holds("Prop17.19(reflexive)", cite);
  auto lz = [&](const Exponent& q, const Scalar& b) {
    SpaceDescriptor out;
    out.family = Family::LorentzZygmund;
    out.u = src.u;
    out.q = q;
    out.b = b;
    out.d = src.d;
    return out;
  };
  auto check = [&](const SpaceDescriptor& t, const SpaceDescriptor& other, bool t_is_src)
      -> std::optional<EmbeddingVerdict> {
    if (t.family != Family::TLorentz || other.family != Family::LorentzZygmund) return {};
    const Exponent& q = t.q;
    const Exponent& r = *t.r;
    const Scalar shift = t.b - r.reciprocal();
    if (!t_is_src) {
      if (other == lz(r, shift + min(q, r).reciprocal())) return holds("Prop17.19(1)", cite);
      if (other == lz(min(q, r), t.b)) return holds("Prop17.19(3)", cite);
    } else {
      if (other == lz(r, shift + max(q, r).reciprocal())) return holds("Prop17.19(2)", cite);
      if (other == lz(max(q, r), t.b)) return holds("Prop17.19(4)", cite);
    }
    return {};
  };
  if (auto v = check(dst, src, false)) return *v;
  if (auto v = check(src, dst, true)) return *v;
  return unknown("Prop17.19 gives one-sided embeddings only", cite);
}

}  // namespace ts

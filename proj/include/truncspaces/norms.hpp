// Sequence-space quasi-norms: Besov and Triebel-Lizorkin, classical,
// truncated and starred, on entrywise sequences and on level profiles.
#pragma once

#include "truncspaces/descriptor.hpp"
#include "truncspaces/generators.hpp"
#include "truncspaces/sequence.hpp"

#include <vector>

namespace ts {

struct NormValue {
  double value = 0.0;  // +inf past double range
  double log2_value = -INFINITY;
  bool exact = false;

  static NormValue from(const XReal& x, bool exact);
  static NormValue infinite();
  bool is_zero() const { return log2_value == -INFINITY; }
  bool is_infinite() const { return log2_value == INFINITY; }
};

// num/den computed in the log domain; den must be nonzero.
double norm_ratio(const NormValue& num, const NormValue& den);

NormValue besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                         const Exponent& q, double xi);
NormValue besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                         const Exponent& q, double xi);

NormValue trunc_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b);
NormValue trunc_besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b);

// Tails j >= k weighted (1+k)^{-1}; r must be finite.
NormValue star_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                              const Exponent& q, const Exponent& r);
NormValue star_besov_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                              const Exponent& q, const Exponent& r);

// Equivalent form with b != 0: b > 0 uses tails from 2^j - 1, b < 0 partial
// sums up to 2^j.
NormValue bstar_besov_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b);

// S_J = sum_{j<=J} (sum_{nu<=2^j} B_nu^q)^{r/q} for J = 0..J_max.
std::vector<double> triviality_partial_sums(const WaveletSequence& l, double s,
                                            const Exponent& p, const Exponent& q,
                                            const Exponent& r, int j_max);

NormValue f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                     const Exponent& q);
NormValue f_seq_norm(const LevelProfile& l, double s, const Exponent& p, const Exponent& q);

NormValue trunc_f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b);
NormValue trunc_f_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b);

// Tails j >= 2^k - 1 with unit weights.
NormValue star_f_seq_norm(const WaveletSequence& l, double s, const Exponent& p,
                          const Exponent& q, const Exponent& r);
NormValue star_f_seq_norm(const LevelProfile& l, double s, const Exponent& p,
                          const Exponent& q, const Exponent& r);

// Local integrability proxy: integral over [0,8)^d of (sum |lambda|^2 chi)^{1/2}.
inline constexpr double kL1locWindow = 8.0;
NormValue l1loc_proxy(const WaveletSequence& l);
NormValue l1loc_proxy(const LevelProfile& l);

// Continuity proxy: sup_x sum |lambda_{j,G,m}| chi_{j,m}(x).
NormValue continuity_proxy(const WaveletSequence& l);
NormValue continuity_proxy(const LevelProfile& l);

// Norm of the descriptor's sequence space (classical B uses the (1+j)^b weight;
// B0 and Lip go through their truncated F form). Dimensions must match.
NormValue space_norm(const SpaceDescriptor& desc, const WaveletSequence& l);
NormValue space_norm(const SpaceDescriptor& desc, const LevelProfile& l);
NormValue space_norm(const SpaceDescriptor& desc, const Extremal& l);

// Block-uniform profiles: truncated norms and the two proxies only.
// Nested layouts need a flat per-level weight (s + tilt = d/p for F norms).
NormValue trunc_besov_seq_norm(const BlockProfile& l, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b);
NormValue trunc_f_seq_norm(const BlockProfile& l, double s, const Exponent& p,
                           const Exponent& q, const Exponent& r, double b);
NormValue l1loc_proxy(const BlockProfile& l);
NormValue continuity_proxy(const BlockProfile& l);
NormValue space_norm(const SpaceDescriptor& desc, const BlockProfile& l);

}  // namespace ts

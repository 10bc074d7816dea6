// General monotone sequences: the block-variation predicate and the
// two-sided norm formulas for periodic GM series and radial profiles.
#pragma once

#include "truncspaces/norms.hpp"
#include "truncspaces/sequence.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ts {

// Verdict is relative to the tested horizon n = 1..N.
struct GMReport {
  bool is_gm = true;
  double constant = 0.0;  // sup_n sum_{k=n}^{2n-1} |a_k - a_{k+1}| / a_n
  std::optional<std::int64_t> violating_n;
  std::int64_t horizon = 0;
};

// Reads a up to index 2N.
GMReport gm_check(const ScalarSequence& a, std::int64_t N);

// n^{-alpha} (log(n+1))^{-beta} for n = 1..N
ScalarSequence gm_power_sequence(double alpha, double beta, std::int64_t N);

// samples[nu] = a_{2^nu}, nu = 0..N. Blocks k cover nu in [2^k - 1, 2^{k+1} - 2].
NormValue gm_trunc_besov_norm_periodic(std::span<const double> samples, double s,
                                       const Exponent& p, const Exponent& q,
                                       const Exponent& r, double b);
NormValue gm_lip_norm_periodic(std::span<const double> samples, double s, const Exponent& p,
                               const Exponent& q, double b);

// Dyadic samples F0(2^nu) for nu = -low.size()+1 .. high.size()-1; low[j] = F0(2^{-j})
// and high[nu] = F0(2^nu), so low[0] and high[0] both hold F0(1).
struct RadialProfile {
  std::vector<double> low;
  std::vector<double> high;

  static RadialProfile from_high(std::vector<double> high);
  double at(int nu) const;  // throws std::out_of_range outside the sampled range
};

// Low part (sum_j 2^{-j(p-1)d} F0(2^{-j})^p)^{1/p} plus the truncated high sum
// over blocks nu in [2^j, 2^{j+1} - 1]. high_until caps the high range.
NormValue gm_radial_trunc_norm(const RadialProfile& F0, double s, const Exponent& p,
                               const Exponent& q, const Exponent& r, double b, int d,
                               std::optional<int> high_until = std::nullopt);

struct GMLorentzPair {
  NormValue rearranged;
  NormValue direct;
  bool applicable = true;  // false when a fails gm_check at the horizon
};

GMLorentzPair gm_lorentz_equiv(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                               const Exponent& r, double b, std::int64_t N);

}  // namespace ts

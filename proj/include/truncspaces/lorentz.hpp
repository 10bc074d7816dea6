// Lorentz, Lorentz-Zygmund and truncated Lorentz sequence norms, all
// evaluated on the non-increasing rearrangement.
#pragma once

#include "truncspaces/norms.hpp"
#include "truncspaces/sequence.hpp"

namespace ts {

// Dyadic-sample form (sum_{n>=0} (2^{n/u} (1+n)^b a*_{2^n})^q)^{1/q}.
NormValue lorentz_seq_norm(const ScalarSequence& a, const Exponent& u, const Exponent& q);
NormValue lz_seq_norm(const ScalarSequence& a, const Exponent& u, const Exponent& q, double b);

// Full-index form (sum_{n>=1} (n^{1/u} (1+log n)^b a*_n)^q / n)^{1/q}.
NormValue lz_seq_norm_full(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                           double b);

NormValue trunc_lorentz_seq_norm(const ScalarSequence& a, const Exponent& u,
                                 const Exponent& q, const Exponent& r, double b);

// Same block formula on raw samples a_{2^n} instead of a*_{2^n}.
NormValue trunc_lorentz_direct(const ScalarSequence& a, const Exponent& u, const Exponent& q,
                               const Exponent& r, double b);

}  // namespace ts

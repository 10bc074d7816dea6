// Embedding decisions: exact clause tables with the fired condition, and for
// failures the extremal family that breaks the inequality.
#pragma once

#include "truncspaces/descriptor.hpp"
#include "truncspaces/generators.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace ts {

enum class VerdictStatus { Holds, Fails, UnknownPerPaper };

std::string_view status_name(VerdictStatus s);

struct EmbeddingVerdict {
  VerdictStatus status = VerdictStatus::UnknownPerPaper;
  std::string condition;  // e.g. "Thm10.1(ii)" or "Thm10.1 needs b0>=b1"
  std::optional<WitnessSpec> witness;
  std::string citation;
};

class UnsupportedPair : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// src -> dst for truncated B/F spaces (classical B, B0 and Lip via their
// canonical forms). Fails verdicts carry witness parameters for verify.
EmbeddingVerdict embeds(const SpaceDescriptor& src, const SpaceDescriptor& dst);
EmbeddingVerdict embeds_L1loc(const SpaceDescriptor& desc);
EmbeddingVerdict embeds_C(const SpaceDescriptor& desc);
EmbeddingVerdict gm_embeds_Lp(const Scalar& s, const Exponent& p, const Exponent& q,
                              const Exponent& r, const Scalar& b, int d);
EmbeddingVerdict embeds_lorentz(const SpaceDescriptor& src, const SpaceDescriptor& dst);

}  // namespace ts

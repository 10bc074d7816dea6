// Discrete K-functionals, limiting interpolation norms, Hardy functionals.
#pragma once

#include "truncspaces/norms.hpp"
#include "truncspaces/sequence.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ts {

// The couple (l^s_q, l^{s0}_q) of weighted sequences indexed by nu >= 0.
struct WeightedLqPair {
  double s = 0.0;
  double s0 = 1.0;
  Exponent q{1};
};

// (sum_nu [min(2^{nu s}, t 2^{nu s0}) w_nu]^q)^{1/q}
NormValue k_functional(std::span<const double> w, double t, const WeightedLqPair& pair);

struct InterpResult {
  NormValue norm;
  bool converged = false;
  int j_max = 0;
};

// Grid t_j = 2^{-j(s0-s)}; theta = 1 adds the weight t_j^{-1}. Requires s0 > s,
// b >= -1/r for theta = 0 and b < -1/r for theta = 1.
InterpResult limiting_interp_norm(std::span<const double> w, int theta, double b,
                                  const Exponent& r, const WeightedLqPair& pair,
                                  std::optional<int> j_max = std::nullopt);

// x_nu = sum_G ||lambda^{nu,G}||_{l_p}; entries must be at tilt 0 scale.
std::vector<double> level_profile_of(const WaveletSequence& l, const Exponent& p);

// Couple (l_{u1,q1}, l_{u0,q0}) with u0 < u1.
struct LorentzPair {
  Exponent u0{1}, q0{1}, u1{2}, q1{1};
};

// Holmstedt form on dyadic samples, cut at 2^n <= t^{-alpha}, 1/alpha = 1/u0 - 1/u1.
NormValue lorentz_k_functional(const ScalarSequence& a, double t, const LorentzPair& pair);

// Grid t_j = 2^{-j/alpha}; theta = 1 adds the weight t_j^{-1}.
InterpResult lorentz_limiting_interp_norm(const ScalarSequence& a, const LorentzPair& pair,
                                          int theta, double b, const Exponent& r,
                                          std::optional<int> j_max = std::nullopt);

enum class HardySide { H1, H2 };

// (LHS, RHS) as q-th roots. H1 uses partial sums with weight 2^{-j lambda q},
// H2 tail sums with weight 2^{j lambda q}; both carry (1+j)^{bq}.
std::pair<NormValue, NormValue> hardy_ratio(std::span<const double> xi, double lambda,
                                            const Exponent& q, double b, HardySide side);

// lambda_0 = 1, lambda_j = 2^{-2^{j-1}} for j = 1..J
std::vector<double> lambda_grid(int J);

}  // namespace ts

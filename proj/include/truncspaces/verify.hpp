// Empirical harness: norm-ratio traces that confirm or falsify embedding
// verdicts, BBM limits, the interpolation identity and the triviality of the
// untruncated functional. Bounded/Diverging are threshold heuristics.
#pragma once

#include "truncspaces/embeddings.hpp"
#include "truncspaces/norms.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ts {

enum class TraceVerdict { Bounded, Diverging, Inconclusive };

std::string_view trace_verdict_name(TraceVerdict v);

struct Thresholds {
  double growth = 4.0;   // Diverging: last/first >= growth
  double bounded = 2.0;  // Bounded: last/reference <= bounded
};

struct RatioTrace {
  std::vector<std::int64_t> sizes;  // strictly increasing
  std::vector<double> ratios;
  TraceVerdict verdict = TraceVerdict::Inconclusive;
  std::string witness;  // witness id for falsification runs
};

// Doubling ladder 16, 32, .., max_size.
std::vector<std::int64_t> doubling_ladder(std::int64_t max_size);
std::vector<std::int64_t> default_budget_sizes();  // 2^4..2^12

struct ConfirmOptions {
  int trials = 16;
  std::int64_t max_size = 4096;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  Thresholds thresholds;
};

// Random sparse sequence: 1..16 entries, levels uniform in [0, log2 size],
// values log-uniform in [2^-20, 2^20], positions in a size-bounded box.
WaveletSequence random_sparse_sequence(int d, std::int64_t size, std::uint64_t seed);

// The ratio at size N is the sup of dst/src over every trial at sizes <= N.
// Bounded when the last ratio is within thresholds.bounded of the ratio at a
// quarter of the largest size. Requires embeds(src, dst) = Holds.
RatioTrace confirm_embedding(const SpaceDescriptor& src, const SpaceDescriptor& dst,
                             const ConfirmOptions& opt);

// Runs the witness named by the Fails verdict. Requires embeds(src, dst) = Fails.
RatioTrace falsify_embedding(const SpaceDescriptor& src, const SpaceDescriptor& dst,
                             std::span<const std::int64_t> sizes,
                             const Thresholds& th = {});

enum class Predicate { L1loc, Continuity };

std::string_view predicate_name(Predicate p);
EmbeddingVerdict predicate_verdict(const SpaceDescriptor& desc, Predicate p);

// Ratios proxy / space norm.
RatioTrace confirm_predicate(const SpaceDescriptor& desc, Predicate p,
                             const ConfirmOptions& opt);
RatioTrace falsify_predicate(const SpaceDescriptor& desc, Predicate p,
                             std::span<const std::int64_t> sizes, const Thresholds& th = {});

// Same ratios for a Fails verdict already in hand.
RatioTrace run_witness(const EmbeddingVerdict& v, const SpaceDescriptor& src,
                       const SpaceDescriptor& dst, std::span<const std::int64_t> sizes,
                       const Thresholds& th = {});
RatioTrace run_witness(const EmbeddingVerdict& v, const SpaceDescriptor& desc, Predicate p,
                       std::span<const std::int64_t> sizes, const Thresholds& th = {});

struct BBMPoint {
  double b = 0.0;
  double normalized = 0.0;  // (1 - 2^{br})^{1/r} times the starred norm
  double deviation = 0.0;   // |normalized - classical|
};

std::vector<BBMPoint> bbm_limit_check(const WaveletSequence& l, double s, const Exponent& p,
                                      const Exponent& q, const Exponent& r,
                                      std::span<const double> b_schedule);

// Ratio limiting interpolation norm / truncated Besov norm over prefixes of l
// holding the first `size` entries. xi > 0 uses (b^s, b^{s0})_{(0, xi-1/r), r}
// with s0 > s; xi < 0 the mirrored theta = 1 couple with s0 < s.
RatioTrace interp_equiv_check(const WaveletSequence& l, double s, double s0,
                              const Exponent& p, const Exponent& q, const Exponent& r,
                              double xi, std::span<const std::int64_t> sizes,
                              const Thresholds& th = {});

struct TrivialityTrace {
  std::vector<double> partial_sums;  // S_J, J = 0..J_max
  int onset = 0;                     // first J with 2^J >= top level
  double min_growth = 0.0;           // min S_{2J}/S_J over max(onset,1) <= J <= J_max/2
  bool diverging = false;            // min_growth >= 1.5
};

TrivialityTrace triviality_check(const WaveletSequence& l, double s, const Exponent& p,
                                 const Exponent& q, const Exponent& r, int j_max);

// One product block of TB/TF descriptors; 1/p = 0 means p = inf.
struct GridBlock {
  int d = 1;
  std::vector<Scalar> s;
  std::vector<Scalar> inv_p;
  std::vector<Scalar> inv_q;
  std::vector<Scalar> inv_r;
  std::vector<Scalar> b;

  std::vector<SpaceDescriptor> descriptors() const;  // valid ones only
};

// Pairs are all ordered pairs inside each pair block; predicates run on
// every descriptor of the predicate blocks.
struct AuditGrid {
  std::vector<GridBlock> pair_blocks;
  std::vector<GridBlock> predicate_blocks;

  static AuditGrid standard();
};

struct AuditFinding {
  std::string what;  // pair or predicate in DSL form
  std::string condition;
  VerdictStatus status;
  RatioTrace trace;
};

struct AuditReport {
  std::size_t pairs = 0;
  std::size_t predicates = 0;
  std::size_t holds = 0, fails = 0, unknown = 0, unsupported = 0;
  std::vector<std::pair<std::string, std::size_t>> conditions;  // sorted, with counts
  std::vector<AuditFinding> contradictions;
  double seconds = 0.0;
};

AuditReport run_grid_audit(const AuditGrid& grid, const ConfirmOptions& confirm,
                           std::span<const std::int64_t> budget_sizes);

}  // namespace ts

// Extremal sequences from the necessity arguments, plus a compressed
// per-level representation for witnesses too large to store entrywise.
#pragma once

#include "truncspaces/sequence.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ts {

enum class ProfileLayout {
  Nested,         // one cube per level, all at m = 0
  DisjointSlabs,  // count_j cubes per level, pairwise disjoint across all levels
  FullFill,       // every cube of level j inside [0,1)^d
};

struct ProfileLevel {
  std::int64_t index = 0;  // level j, or k with j = 2^k when lacunary
  double log2_count = 0.0;
  XReal value;
};

// Level j carries count cubes with coefficient value * 2^{j tilt}.
struct LevelProfile {
  int d = 1;
  ProfileLayout layout = ProfileLayout::Nested;
  bool lacunary = false;
  double tilt = 0.0;
  std::vector<ProfileLevel> levels;  // strictly increasing index

  double level(std::int64_t index) const;        // j as a double, inf past range
  double log2_level(std::int64_t index) const;   // log2(1 + j)
  int block(std::int64_t index) const;
  // Entrywise form; throws std::length_error beyond max_entries.
  WaveletSequence materialize(std::size_t max_entries = 1u << 16) const;
};

// Block k covers every level j in [2^k - 1, 2^{k+1} - 2]; each such level
// carries value * 2^{j tilt} on its layout. Slab levels use count
// 2^{jd} * 2^{log2_measure}. Runs have consecutive k.
struct BlockRun {
  int k = 0;
  double log2_measure = 0.0;
  XReal value;
};

struct BlockProfile {
  int d = 1;
  ProfileLayout layout = ProfileLayout::Nested;
  double tilt = 0.0;
  std::vector<BlockRun> runs;
};

using Extremal = std::variant<WaveletSequence, LevelProfile, BlockProfile>;

enum class WitnessKind {
  Spike,
  LacunaryDiagonal,
  BlockConstant,
  PowerDiagonal,
  LogRefined,
  SpatialSpread,
  SpreadLevel,
  LogSpreadLevel,
  FullFillLevel,
  LacunaryFullFill,
  FullFillBlock,
  FullFillPower,
  BlockPower,
  BlockPowerFull,
  BlockSlabs,
};

std::string witness_name(WitnessKind k);
WitnessKind parse_witness_kind(const std::string& name);

struct WitnessSpec {
  WitnessKind kind = WitnessKind::Spike;
  std::map<std::string, double> params;
  // true when the truncation length is the block or level exponent log2(size)
  bool logarithmic_length() const;
  std::string id() const { return witness_name(kind); }
};

Extremal gen_extremal(WitnessKind kind, const std::map<std::string, double>& params,
                      std::int64_t L);
inline Extremal gen_extremal(const WitnessSpec& w, std::int64_t L) {
  return gen_extremal(w.kind, w.params, L);
}

}  // namespace ts

#include "truncspaces/generators.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ts {

namespace {

constexpr std::array<std::pair<WitnessKind, const char*>, 15> kNames{{
    {WitnessKind::Spike, "Spike"},
    {WitnessKind::LacunaryDiagonal, "LacunaryDiagonal"},
    {WitnessKind::BlockConstant, "BlockConstant"},
    {WitnessKind::PowerDiagonal, "PowerDiagonal"},
    {WitnessKind::LogRefined, "LogRefined"},
    {WitnessKind::SpatialSpread, "SpatialSpread"},
    {WitnessKind::SpreadLevel, "SpreadLevel"},
    {WitnessKind::LogSpreadLevel, "LogSpreadLevel"},
    {WitnessKind::FullFillLevel, "FullFillLevel"},
    {WitnessKind::LacunaryFullFill, "LacunaryFullFill"},
    {WitnessKind::FullFillBlock, "FullFillBlock"},
    {WitnessKind::FullFillPower, "FullFillPower"},
    {WitnessKind::BlockPower, "BlockPower"},
    {WitnessKind::BlockPowerFull, "BlockPowerFull"},
    {WitnessKind::BlockSlabs, "BlockSlabs"},
}};

double param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("missing witness parameter '" + key + "'");
  return it->second;
}

double param_or(const std::map<std::string, double>& p, const std::string& key, double def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

int dim_of(const std::map<std::string, double>& p) {
  return static_cast<int>(param_or(p, "d", 1.0));
}

// s - d/p with p = inf encoded as p <= 0 or p = inf
double smooth_gap(const std::map<std::string, double>& p) {
  double pp = param(p, "p");
  double inv = std::isinf(pp) ? 0.0 : 1.0 / pp;
  return param(p, "s") - dim_of(p) * inv;
}

double log2_ceil_count(double log2_count) {
  if (log2_count <= 50.0) return std::log2(std::ceil(std::exp2(log2_count) - 1e-9));
  return log2_count;
}

LevelProfile make_profile(int d, ProfileLayout layout, bool lacunary, double tilt) {
  LevelProfile out;
  out.d = d;
  out.layout = layout;
  out.lacunary = lacunary;
  out.tilt = tilt;
  return out;
}

std::vector<std::int64_t> morton_to_m(std::uint64_t c, int d) {
  std::vector<std::int64_t> m(static_cast<std::size_t>(d), 0);
  for (int bit = 0; c != 0; ++bit)
    for (int i = 0; i < d && c != 0; ++i, c >>= 1)
      if (c & 1u) m[static_cast<std::size_t>(i)] |= std::int64_t{1} << bit;
  return m;
}

}  // namespace

double LevelProfile::level(std::int64_t index) const {
  if (!lacunary) return static_cast<double>(index);
  return index > 1023 ? INFINITY : std::exp2(static_cast<double>(index));
}

double LevelProfile::log2_level(std::int64_t index) const {
  if (!lacunary) return std::log2(1.0 + static_cast<double>(index));
  double k = static_cast<double>(index);
  return k + std::log2(1.0 + std::exp2(-k));
}

int LevelProfile::block(std::int64_t index) const {
  if (!lacunary) return block_of(index).k;
  return index == 0 ? 1 : static_cast<int>(index);
}

WaveletSequence LevelProfile::materialize(std::size_t max_entries) const {
  if (lacunary && !levels.empty() && levels.back().index > 20)
    throw std::length_error("lacunary profile too deep to materialize");
  WaveletSequence out(d, tilt);
  const auto G = all_m_mask(d);
  std::uint64_t cursor = 0;  // finest-level Morton cursor for slabs
  int finest = 0;
  for (const auto& lv : levels) finest = std::max(finest, static_cast<int>(level(lv.index)));
  std::size_t total = 0;
  for (const auto& lv : levels) {
    int j = static_cast<int>(level(lv.index));
    double v = lv.value.to_double();
    if (v == 0.0 || !std::isfinite(v))
      throw std::range_error("profile value outside double range");
    switch (layout) {
      case ProfileLayout::Nested:
        out.set({j, G, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)}, v);
        ++total;
        break;
      case ProfileLayout::FullFill: {
        if (j * d > 20) throw std::length_error("full-fill level too fine to materialize");
        std::uint64_t n = std::uint64_t{1} << (j * d);
        total += n;
        if (total > max_entries) throw std::length_error("profile too large to materialize");
        for (std::uint64_t c = 0; c < n; ++c) out.set({j, G, morton_to_m(c, d)}, v);
        break;
      }
      case ProfileLayout::DisjointSlabs: {
        double n = std::round(std::exp2(lv.log2_count));
        if (total + n > max_entries) throw std::length_error("profile too large to materialize");
        if ((finest - j) * d > 62) throw std::length_error("slab levels too far apart");
        std::uint64_t unit = std::uint64_t{1} << ((finest - j) * d);
        cursor = (cursor + unit - 1) / unit * unit;
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
          out.set({j, G, morton_to_m(cursor / unit, d)}, v);
          cursor += unit;
        }
        total += static_cast<std::size_t>(n);
        break;
      }
    }
  }
  return out;
}

std::string witness_name(WitnessKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  throw std::logic_error("unnamed witness kind");
}

WitnessKind parse_witness_kind(const std::string& name) {
  for (const auto& [kind, n] : kNames)
    if (name == n) return kind;
  throw std::invalid_argument("unknown extremal kind '" + name + "'");
}

bool WitnessSpec::logarithmic_length() const {
  return kind == WitnessKind::BlockConstant || kind == WitnessKind::FullFillBlock;
}

Extremal gen_extremal(WitnessKind kind, const std::map<std::string, double>& params,
                      std::int64_t L) {
  if (L < 1) throw std::invalid_argument("truncation length must be >= 1");
  const int d = dim_of(params);
  const auto G = all_m_mask(d);
  const std::vector<std::int64_t> origin(static_cast<std::size_t>(d), 0);
  switch (kind) {
    case WitnessKind::Spike: {
      auto j0 = static_cast<int>(param_or(params, "j0", static_cast<double>(L)));
      WaveletSequence out(d, param_or(params, "a", 0.0));
      out.set({j0, G, origin}, 1.0);
      return out;
    }
    case WitnessKind::LacunaryDiagonal: {
      auto out = make_profile(d, ProfileLayout::Nested, true, -smooth_gap(params));
      double eps = param(params, "eps");
      double eta = param_or(params, "eta", 0.0);
      for (std::int64_t k = 0; k < L; ++k) {
        double kk = static_cast<double>(k);
        out.levels.push_back({k, 0.0, XReal::exp2(-kk * eps - eta * std::log2(1.0 + kk))});
      }
      return out;
    }
    case WitnessKind::BlockConstant:
    case WitnessKind::FullFillBlock: {
      bool full = kind == WitnessKind::FullFillBlock;
      double tilt = full ? -param(params, "s") : -smooth_gap(params);
      auto out = make_profile(d, full ? ProfileLayout::FullFill : ProfileLayout::Nested,
                              false, tilt);
      if (L > 40) throw std::invalid_argument("block index too large");
      BlockIndex blk{static_cast<int>(L)};
      for (std::int64_t j = blk.first(); j <= blk.last(); ++j)
        out.levels.push_back({j, full ? static_cast<double>(j * d) : 0.0, XReal(1.0)});
      return out;
    }
    case WitnessKind::PowerDiagonal:
    case WitnessKind::LogRefined:
    case WitnessKind::FullFillPower: {
      bool full = kind == WitnessKind::FullFillPower;
      double tilt = full ? -param(params, "s") : -smooth_gap(params);
      auto out = make_profile(d, full ? ProfileLayout::FullFill : ProfileLayout::Nested,
                              false, tilt);
      double eps = kind == WitnessKind::LogRefined
                       ? param(params, "b") + 1.0 / param(params, "q")
                       : param(params, "eps");
      double beta = kind == WitnessKind::PowerDiagonal ? 0.0 : param_or(params, "beta", 0.0);
      for (std::int64_t j = 0; j <= L; ++j) {
        double l1 = std::log2(1.0 + static_cast<double>(j));
        double lg = std::log2(1.0 + l1);
        out.levels.push_back(
            {j, full ? static_cast<double>(j * d) : 0.0, XReal::exp2(-eps * l1 - beta * lg)});
      }
      return out;
    }
    case WitnessKind::SpatialSpread: {
      double eps = param(params, "eps");
      WaveletSequence out(d);
      for (std::int64_t l = 1; l <= L; ++l) {
        auto m = origin;
        m[0] = l;
        out.set({0, G, m}, std::pow(static_cast<double>(l), -eps));
      }
      return out;
    }
    case WitnessKind::SpreadLevel:
    case WitnessKind::LogSpreadLevel: {
      bool logv = kind == WitnessKind::LogSpreadLevel;
      double beta = param(params, "beta");
      double eps = param(params, "eps");
      auto out = make_profile(d, ProfileLayout::DisjointSlabs, false, 0.0);
      for (std::int64_t j = 1; j <= L; ++j) {
        double jj = static_cast<double>(j);
        double lc, lv;
        if (logv) {
          double ln = std::log(1.0 + jj);
          lc = jj * d - beta * std::log2(ln) - std::log2(1.0 + jj);
          lv = eps * std::log2(ln);
        } else {
          lc = jj * d - beta * std::log2(1.0 + jj);
          lv = eps * std::log2(1.0 + jj);
        }
        out.levels.push_back({j, log2_ceil_count(std::max(lc, 0.0)), XReal::exp2(lv)});
      }
      return out;
    }
    case WitnessKind::FullFillLevel: {
      auto out = make_profile(d, ProfileLayout::FullFill, false, 0.0);
      out.levels.push_back({L, static_cast<double>(L * d), XReal(1.0)});
      return out;
    }
    case WitnessKind::LacunaryFullFill: {
      auto out = make_profile(d, ProfileLayout::FullFill, true, -param_or(params, "s", 0.0));
      double eps = param(params, "eps");
      double eta = param_or(params, "eta", 0.0);
      for (std::int64_t k = 0; k < L; ++k) {
        double kk = static_cast<double>(k);
        out.levels.push_back({k, out.level(k) * d, XReal::exp2(-kk * eps - eta * std::log2(1.0 + kk))});
      }
      return out;
    }
    case WitnessKind::BlockPower:
    case WitnessKind::BlockPowerFull:
    case WitnessKind::BlockSlabs: {
      BlockProfile out;
      out.d = d;
      out.layout = kind == WitnessKind::BlockPower       ? ProfileLayout::Nested
                   : kind == WitnessKind::BlockPowerFull ? ProfileLayout::FullFill
                                                         : ProfileLayout::DisjointSlabs;
      out.tilt = kind == WitnessKind::BlockPower ? -smooth_gap(params) : -param_or(params, "s", 0.0);
      const bool slabs = kind == WitnessKind::BlockSlabs;
      const double e = param(params, "e");
      const double beta = param_or(params, "beta", 0.0);
      const double alpha = param_or(params, "alpha", 0.0);
      const double theta = param_or(params, "theta", 0.0);
      const double shift = param_or(params, "shift", 0.0);
      const auto k0 = static_cast<int>(param_or(params, "k0", slabs ? 4.0 : 0.0));
      if (L > 1 << 20) throw std::invalid_argument("too many blocks");
      for (int k = k0; k < k0 + static_cast<int>(L); ++k) {
        double kk = k;
        double l1 = std::log2(1.0 + kk);
        // power-of-two measure keeps the slab counts integral
        double m = slabs ? kk + std::ceil(alpha * kk + theta * l1 - 1e-9) + shift : 0.0;
        out.runs.push_back({k, -m, XReal::exp2(-e * kk - beta * l1)});
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown extremal kind");
}

}  // namespace ts

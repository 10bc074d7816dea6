// Brute-force reference evaluations written straight from the defining sums.
// Deliberately naive: plain loops in long double, no shared code with src/.
#pragma once

#include "truncspaces/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using ld = long double;
constexpr double kInf = std::numeric_limits<double>::infinity();

// (sum x^e)^{1/e}, or max for e = inf
inline ld lp(const std::vector<ld>& xs, double e) {
  if (std::isinf(e)) {
    ld m = 0;
    for (ld x : xs) m = std::max(m, x);
    return m;
  }
  ld s = 0;
  for (ld x : xs) s += std::pow(x, static_cast<ld>(e));
  return std::pow(s, 1.0L / e);
}

inline int block(int j) {
  int k = 0;
  while ((1 << (k + 1)) - 2 < j) ++k;
  return k;
}

// 2^{j(s-d/p)} (sum_G ||lambda^{j,G}||_p^q)^{1/q} per level
inline std::map<int, ld> level_terms(const ts::WaveletSequence& l, double s, double p, double q) {
  std::map<int, std::map<std::uint32_t, std::vector<ld>>> groups;
  for (const auto& [k, v] : l.entries())
    groups[k.j][k.G].push_back(std::abs(static_cast<ld>(v)) *
                               std::pow(2.0L, static_cast<ld>(k.j) * l.tilt()));
  std::map<int, ld> out;
  const ld ip = std::isinf(p) ? 0.0L : 1.0L / p;
  for (auto& [j, per_g] : groups) {
    std::vector<ld> norms;
    for (auto& [G, xs] : per_g) norms.push_back(lp(xs, p));
    out[j] = std::pow(2.0L, j * (s - l.dim() * ip)) * lp(norms, q);
  }
  return out;
}

inline ld besov(const ts::WaveletSequence& l, double s, double p, double q, double xi) {
  std::vector<ld> terms;
  for (auto [j, t] : level_terms(l, s, p, q)) terms.push_back(std::pow(1.0L + j, (ld)xi) * t);
  return lp(terms, q);
}

inline ld trunc_besov(const ts::WaveletSequence& l, double s, double p, double q, double r,
                      double b) {
  std::map<int, std::vector<ld>> blocks;
  for (auto [j, t] : level_terms(l, s, p, q)) blocks[block(j)].push_back(t);
  std::vector<ld> outer;
  for (auto& [k, ts] : blocks) outer.push_back(std::pow(2.0L, (ld)k * b) * lp(ts, q));
  return lp(outer, r);
}

// Piecewise-constant integrand evaluated on the finest grid, cell by cell.
// Returns (int g^{p/q})^{1/p} with g = sum_{j in [jlo, jhi]} (2^{js}|lambda|)^q chi.
// q = inf uses the pointwise max. d <= 2.
inline ld f_grid(const ts::WaveletSequence& l, double s, double p, double q, int jlo = 0,
                 int jhi = 1 << 20) {
  const int d = l.dim();
  int top = 0;
  std::int64_t lo = 0, hi = 1;  // bounding box at level 0
  for (const auto& [k, v] : l.entries()) {
    top = std::max(top, k.j);
    for (auto m : k.m) {
      lo = std::min<std::int64_t>(lo, m >> k.j);
      hi = std::max<std::int64_t>(hi, (m >> k.j) + 1);
    }
  }
  const std::int64_t n = (hi - lo) << top;
  std::vector<ld> g(static_cast<std::size_t>(d == 1 ? n : n * n), 0.0L);
  for (const auto& [k, v] : l.entries()) {
    if (k.j < jlo || k.j > jhi) continue;
    ld c = std::pow(2.0L, k.j * s) * std::abs(static_cast<ld>(v)) *
           std::pow(2.0L, static_cast<ld>(k.j) * l.tilt());
    ld w = std::isinf(q) ? c : std::pow(c, (ld)q);
    std::int64_t side = std::int64_t{1} << (top - k.j);
    std::int64_t x0 = (k.m[0] << (top - k.j)) - (lo << top);
    std::int64_t y0 = d == 2 ? (k.m[1] << (top - k.j)) - (lo << top) : 0;
    for (std::int64_t x = x0; x < x0 + side; ++x)
      for (std::int64_t y = y0; y < y0 + (d == 2 ? side : 1); ++y) {
        auto& cell = g[static_cast<std::size_t>(d == 1 ? x : x * n + y)];
        cell = std::isinf(q) ? std::max(cell, w) : cell + w;
      }
  }
  const ld vol = std::pow(2.0L, -static_cast<ld>(top) * d);
  ld total = 0;
  for (ld x : g) {
    if (x == 0) continue;
    ld val = std::isinf(q) ? x : std::pow(x, 1.0L / q);
    total += std::pow(val, (ld)p) * vol;
  }
  return std::pow(total, 1.0L / p);
}

inline ld trunc_f_grid(const ts::WaveletSequence& l, double s, double p, double q, double r,
                       double b) {
  std::vector<ld> outer;
  int top = l.max_level();
  for (int k = 0; (1 << k) - 1 <= top; ++k)
    outer.push_back(std::pow(2.0L, (ld)k * b) *
                    f_grid(l, s, p, q, (1 << k) - 1, (1 << (k + 1)) - 2));
  return lp(outer, r);
}

// Random sequence with entries at levels <= max_level inside [0, 2)^d.
inline ts::WaveletSequence random_sequence(std::mt19937_64& g, int d, int max_level,
                                           int max_entries = 12) {
  ts::WaveletSequence l(d);
  std::uniform_int_distribution<int> count(1, max_entries), level(0, max_level);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  int n = count(g);
  for (int i = 0; i < n; ++i) {
    int j = level(g);
    std::uniform_int_distribution<std::int64_t> pos(0, (std::int64_t{2} << j) - 1);
    std::vector<std::int64_t> m(static_cast<std::size_t>(d));
    for (auto& x : m) x = pos(g);
    std::uniform_int_distribution<std::uint32_t> gender(j == 0 ? 0u : 1u, (1u << d) - 1);
    l.set({j, gender(g), m}, std::exp2(val(g)) * (g() % 2 ? 1.0 : -1.0));
  }
  return l;
}

inline bool close(double a, ld b, double rel) {
  return std::abs(a - static_cast<double>(b)) <= rel * std::max(std::abs(a), std::abs((double)b));
}

}  // namespace oracle

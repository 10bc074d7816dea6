#include "truncspaces/dyadic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ts {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : v) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

std::int64_t floor_shift(std::int64_t m, int sh) {
  if (sh >= 63) return m < 0 ? -1 : 0;
  return m >> sh;
}

}  // namespace

DyadicForest::DyadicForest(int d, std::vector<DyadicCell> cells, PathCombine combine)
    : d_(d), combine_(combine) {
  std::map<int, std::unordered_map<std::vector<std::int64_t>, std::size_t, VecHash>> by_level;
  std::vector<std::vector<std::int64_t>> pos;
  std::sort(cells.begin(), cells.end(),
            [](const DyadicCell& a, const DyadicCell& b) { return a.j < b.j; });
  for (auto& c : cells) {
    if (static_cast<int>(c.m.size()) != d) throw std::invalid_argument("cell dimension mismatch");
    if (c.w.is_zero()) continue;
    auto& level = by_level[c.j];
    auto it = level.find(c.m);
    if (it != level.end()) {
      auto& w = nodes_[it->second].w;
      w = combine == PathCombine::Sum ? w + c.w : max(w, c.w);
      continue;
    }
    level.emplace(c.m, nodes_.size());
    nodes_.push_back({c.j, c.w, XReal(), -1, XReal()});
    pos.push_back(std::move(c.m));
  }
  std::vector<int> levels;
  for (const auto& [j, _] : by_level) levels.push_back(j);
  std::vector<std::int64_t> anc(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node& n = nodes_[i];
    auto lv = std::lower_bound(levels.begin(), levels.end(), n.j);
    while (lv != levels.begin()) {
      --lv;
      int sh = n.j - *lv;
      for (int c = 0; c < d; ++c) anc[c] = floor_shift(pos[i][c], sh);
      const auto& map = by_level[*lv];
      if (auto it = map.find(anc); it != map.end()) {
        n.parent = static_cast<long>(it->second);
        break;
      }
    }
    // nodes are in level order, so the parent's path is final
    if (n.parent < 0) {
      n.path = n.w;
    } else {
      Node& p = nodes_[static_cast<std::size_t>(n.parent)];
      n.path = combine == PathCombine::Sum ? p.path + n.w : max(p.path, n.w);
      p.child_volume += XReal::exp2(-static_cast<double>(n.j) * d);
    }
  }
}

XReal DyadicForest::integral(double exponent) const {
  XSum total;
  for (const auto& n : nodes_) {
    XReal free = XReal::exp2(-static_cast<double>(n.j) * d_) - n.child_volume;
    if (free.is_zero() || free.is_negative()) continue;
    total.add(n.path.pow(exponent) * free);
  }
  return total.total();
}

XReal DyadicForest::sup() const {
  XReal out;
  for (const auto& n : nodes_) out = max(out, n.path);
  return out;
}

}  // namespace ts

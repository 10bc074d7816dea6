// Laminar forest of dyadic cubes with exact piecewise-constant integration.
#pragma once

#include "truncspaces/xreal.hpp"

#include <cstdint>
#include <vector>

namespace ts {

struct DyadicCell {
  int j = 0;
  std::vector<std::int64_t> m;
  XReal w;  // non-negative
};

enum class PathCombine { Sum, Max };

class DyadicForest {
public:
  // Cells sharing (j, m) are merged with the same combine rule.
  DyadicForest(int d, std::vector<DyadicCell> cells, PathCombine combine);

  // Integral over R^d of P(x)^exponent, P(x) the combined weight of cubes containing x.
  XReal integral(double exponent) const;
  // sup_x P(x)
  XReal sup() const;

  std::size_t size() const { return nodes_.size(); }

private:
  struct Node {
    int j;
    XReal w;
    XReal path;  // combined weight along the root path, including this node
    long parent = -1;
    XReal child_volume;
  };
  int d_;
  PathCombine combine_;
  std::vector<Node> nodes_;
};

}  // namespace ts

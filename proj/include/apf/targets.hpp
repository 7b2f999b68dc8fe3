#pragma once

// Target pattern normalization and the paper's total order over targets:
// t_0 is the rightmost point of the topmost row, t_{n-1} the leftmost point
// of the bottom row.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "apf/geometry.hpp"

namespace apf {

/// Normalized target pattern: min x = 0, min y = 0, points ordered so that
/// i < j on one row implies t_i.x > t_j.x, and across rows t_i.y > t_j.y.
struct TargetPattern {
  std::vector<GridPoint> ordered;

  std::size_t size() const { return ordered.size(); }
  const GridPoint& at(std::size_t i) const { return ordered.at(i); }
};

inline TargetPattern order_targets(std::vector<GridPoint> raw) {
  if (raw.empty()) throw std::invalid_argument("order_targets: empty pattern");
  std::sort(raw.begin(), raw.end());
  if (std::adjacent_find(raw.begin(), raw.end()) != raw.end())
    throw std::invalid_argument("order_targets: duplicate target");
  int mx = raw[0].x, my = raw[0].y;
  for (const GridPoint& p : raw) {
    mx = std::min(mx, p.x);
    my = std::min(my, p.y);
  }
  for (GridPoint& p : raw) p = {p.x - mx, p.y - my};
  std::sort(raw.begin(), raw.end(), [](GridPoint a, GridPoint b) {
    if (a.y != b.y) return a.y > b.y;
    return a.x > b.x;
  });
  return TargetPattern{std::move(raw)};
}

}  // namespace apf

#pragma once

// Exact integer geometry on the infinite grid: collinearity/betweenness,
// obstructed visibility, horizontal mirror axes in doubled-y coordinates,
// per-column occupancy bit strings and their lexicographic dominance, and
// whole-configuration reflection symmetry detection.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace apf {

struct GridPoint {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }

struct GridPointHash {
  std::size_t operator()(const GridPoint& p) const {
    return std::hash<std::int64_t>{}((std::int64_t(p.x) << 32) ^ std::uint32_t(p.y));
  }
};

/// A horizontal line at height y2/2. Doubled coordinates keep half-integer
/// mirror lines exact: a grid row y lies on the axis iff y2 == 2*y.
struct HorizontalAxis {
  int y2 = 0;

  friend auto operator<=>(const HorizontalAxis&, const HorizontalAxis&) = default;
};

/// Occupancy bits of one half of a column, read outward from an axis.
/// Trailing zeros beyond the farthest robot are never stored; two sequences
/// compare as infinite 0-padded strings.
struct LambdaSequence {
  std::vector<bool> bits;

  bool operator==(const LambdaSequence& o) const {
    std::size_t n = std::max(bits.size(), o.bits.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i) != o.at(i)) return false;
    }
    return true;
  }

  // Lexicographic order over the 0-padded infinite strings.
  bool operator<(const LambdaSequence& o) const {
    std::size_t n = std::max(bits.size(), o.bits.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i) != o.at(i)) return o.at(i);
    }
    return false;
  }

  bool at(std::size_t i) const { return i < bits.size() && bits[i]; }
};

/// True iff c lies on the open segment (a,b): collinear, inside the closed
/// bounding box, and distinct from both endpoints.
inline bool strictly_between(GridPoint a, GridPoint b, GridPoint c) {
  if (c == a || c == b) return false;
  std::int64_t cross = std::int64_t(b.x - a.x) * (c.y - a.y) - std::int64_t(b.y - a.y) * (c.x - a.x);
  if (cross != 0) return false;
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

namespace detail {
inline int gcd_pos(int a, int b) {
  while (b != 0) {
    int t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}
}  // namespace detail

/// Indices visible from positions[i]: j is visible iff no third robot lies
/// strictly on the segment. Robots sharing a sight ray block each other, so
/// per direction only the nearest robot survives.
inline std::vector<std::size_t> visible_set(const std::vector<GridPoint>& positions, std::size_t i) {
  if (i >= positions.size()) throw std::out_of_range("visible_set: index");
  {
    std::vector<GridPoint> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("visible_set: duplicate positions");
  }
  // direction -> (squared-length proxy, index) of the nearest robot
  std::map<GridPoint, std::pair<std::int64_t, std::size_t>> nearest;
  const GridPoint self = positions[i];
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == i) continue;
    GridPoint d = positions[j] - self;
    int g = detail::gcd_pos(d.x, d.y);
    GridPoint dir{d.x / g, d.y / g};
    std::int64_t dist = std::int64_t(d.x) * d.x + std::int64_t(d.y) * d.y;
    auto it = nearest.find(dir);
    if (it == nearest.end() || dist < it->second.first) nearest[dir] = {dist, j};
  }
  std::vector<std::size_t> out;
  out.reserve(nearest.size());
  for (const auto& [dir, best] : nearest) out.push_back(best.second);
  std::sort(out.begin(), out.end());
  return out;
}

/// Axis through the midpoint of two robots on the same vertical line.
inline HorizontalAxis midline(GridPoint p, GridPoint q) {
  if (p.x != q.x) throw std::invalid_argument("midline: points not on one vertical line");
  if (p == q) throw std::invalid_argument("midline: points coincide");
  return {p.y + q.y};
}

inline bool on_axis(GridPoint p, HorizontalAxis k) { return 2 * p.y == k.y2; }

/// Occupancy sequences of one column, above and below k, indexed outward.
/// A robot exactly on k (even y2 only) belongs to neither half.
inline std::pair<LambdaSequence, LambdaSequence> lambda_pair(int column,
                                                             const std::vector<GridPoint>& occupied,
                                                             HorizontalAxis k) {
  LambdaSequence above, below;
  auto place = [&](LambdaSequence& seq, int dist2) {
    // dist2 = doubled distance from k; j-th slot is at 2j (even axis) or 2j-1 (odd).
    int j = (k.y2 % 2 == 0) ? dist2 / 2 : (dist2 + 1) / 2;
    if (std::size_t(j) > seq.bits.size()) seq.bits.resize(j, false);
    seq.bits[j - 1] = true;
  };
  for (const GridPoint& p : occupied) {
    if (p.x != column) continue;
    int d2 = 2 * p.y - k.y2;
    if (d2 > 0) place(above, d2);
    else if (d2 < 0) place(below, -d2);
  }
  return {above, below};
}

inline bool line_symmetric(int column, const std::vector<GridPoint>& occupied, HorizontalAxis k) {
  auto [above, below] = lambda_pair(column, occupied, k);
  return above == below;
}

enum class Side { Above, Below, None };

/// Side of k holding the lexicographically larger lambda; None iff symmetric.
inline Side dominant_side(int column, const std::vector<GridPoint>& occupied, HorizontalAxis k) {
  auto [above, below] = lambda_pair(column, occupied, k);
  if (above == below) return Side::None;
  return below < above ? Side::Above : Side::Below;
}

/// The unique candidate horizontal mirror axis of a configuration is
/// y2 = min_y + max_y (any mirror symmetry exchanges extremal rows).
/// Returns it iff reflection maps the set onto itself and no robot lies on
/// the axis; such an axis makes the instance unsolvable.
inline std::optional<HorizontalAxis> reflection_axis(const std::vector<GridPoint>& config) {
  if (config.empty()) throw std::invalid_argument("reflection_axis: empty configuration");
  int min_y = config[0].y, max_y = config[0].y;
  for (const GridPoint& p : config) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  HorizontalAxis k{min_y + max_y};
  std::vector<GridPoint> sorted = config;
  std::sort(sorted.begin(), sorted.end());
  for (const GridPoint& p : sorted) {
    if (on_axis(p, k)) return std::nullopt;
    GridPoint mirrored{p.x, k.y2 - p.y};
    if (!std::binary_search(sorted.begin(), sorted.end(), mirrored)) return std::nullopt;
  }
  return k;
}

}  // namespace apf

#pragma once

// Independent ground truth. brute_visibility re-derives visibility from the
// betweenness definition with an all-triples scan; brute_solvability sweeps
// every candidate half-integer axis instead of the single extremal one. The
// explorer walks the entire interleaving graph of tiny instances.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "apf/config.hpp"
#include "apf/controller.hpp"
#include "apf/sim.hpp"

namespace apf {

/// All-triples visibility: j visible from i iff no k solves the parametric
/// on-segment equations. Deliberately a different route than visible_set's
/// direction bucketing.
inline std::vector<std::size_t> brute_visibility(const std::vector<GridPoint>& positions,
                                                 std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == i) continue;
    bool blocked = false;
    for (std::size_t b = 0; b < positions.size() && !blocked; ++b) {
      if (b == i || b == j) continue;
      // positions[b] = positions[i] + t*(positions[j]-positions[i]), 0<t<1
      GridPoint d = positions[j] - positions[i];
      GridPoint e = positions[b] - positions[i];
      std::int64_t cross = std::int64_t(d.x) * e.y - std::int64_t(d.y) * e.x;
      std::int64_t dot = std::int64_t(d.x) * e.x + std::int64_t(d.y) * e.y;
      std::int64_t len2 = std::int64_t(d.x) * d.x + std::int64_t(d.y) * d.y;
      blocked = cross == 0 && 0 < dot && dot < len2;
    }
    if (!blocked) out.push_back(j);
  }
  return out;
}

/// Tries every half-integer horizontal axis in range, not just the extremal
/// candidate: solvable iff no axis mirrors the set while avoiding robots.
inline bool brute_solvability(const std::vector<GridPoint>& positions) {
  if (positions.empty()) throw std::invalid_argument("brute_solvability: empty");
  int min_y = positions[0].y, max_y = positions[0].y;
  for (const GridPoint& p : positions) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  std::vector<GridPoint> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  for (int y2 = 2 * min_y - 2; y2 <= 2 * max_y + 2; ++y2) {
    bool mirror = true;
    for (const GridPoint& p : sorted) {
      if (2 * p.y == y2 || !std::binary_search(sorted.begin(), sorted.end(),
                                               GridPoint{p.x, y2 - p.y})) {
        mirror = false;
        break;
      }
    }
    if (mirror) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive interleaving exploration
// ---------------------------------------------------------------------------

struct ExplorationResult {
  std::size_t states_visited = 0;
  std::size_t success_leaves = 0;
  std::size_t deadlock_leaves = 0;
  std::size_t collision_edges = 0;
  std::size_t depth_exceeded = 0;  // frontier states beyond the budget
  // Event order (robot indices) from the initial state to the first bad
  // state; present whenever a collision or deadlock was found.
  std::optional<std::vector<std::size_t>> counterexample;

  bool all_success() const {
    return collision_edges == 0 && deadlock_leaves == 0 && depth_exceeded == 0 &&
           success_leaves > 0;
  }
};

namespace detail {

/// Canonical key: robots sorted by position, translated so the min corner is
/// the origin. Translation never changes any snapshot; reflection would, so
/// it is never applied.
inline std::string canonical_key(const World& w) {
  int min_x = w.config.robots[0].pos.x, min_y = w.config.robots[0].pos.y;
  for (const Robot& r : w.config.robots) {
    min_x = std::min(min_x, r.pos.x);
    min_y = std::min(min_y, r.pos.y);
  }
  struct Row {
    int x, y, chir;
    std::uint8_t light, pmove;  // pmove: 0 = idle, else Move+1
  };
  std::vector<Row> rows;
  rows.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Robot& r = w.config.robots[i];
    const auto& p = w.pending[i];
    rows.push_back({r.pos.x - min_x, r.pos.y - min_y, r.chirality, std::uint8_t(r.light),
                    std::uint8_t(p ? std::uint8_t(*p) + 1 : 0)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.x, a.y, a.chir, a.light, a.pmove) <
           std::tie(b.x, b.y, b.chir, b.light, b.pmove);
  });
  std::string key;
  key.reserve(rows.size() * 8);
  for (const Row& r : rows) {
    for (int v : {r.x, r.y, r.chir}) {
      key.push_back(char(v & 0xff));
      key.push_back(char((v >> 8) & 0xff));
    }
    key.push_back(char(r.light));
    key.push_back(char(r.pmove));
  }
  return key;
}

}  // namespace detail

/// Walks every reachable interleaving of the instance: at each state one
/// event per robot is enabled (Look when idle, Move when pending). Null
/// Looks are self-loops, not edges. Memoization is over canonical states,
/// so the result covers all schedules, not one path family.
inline ExplorationResult explore_all_schedules(const Configuration& initial,
                                               const TargetPattern& targets,
                                               std::size_t state_budget = 100000,
                                               const Controller& controller = {}) {
  if (initial.robots.size() != targets.size())
    throw std::invalid_argument("explore: robot count differs from target count");
  if (!is_solvable(initial.positions()))
    throw UnsolvableError("explore: initial configuration is mirror-symmetric");

  ExplorationResult res;
  struct Node {
    World w;
    std::uint32_t parent;
    std::size_t via_robot;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::uint32_t> seen;
  std::vector<std::uint32_t> queue;

  World w0(initial);
  nodes.push_back({w0, UINT32_MAX, 0});
  seen.emplace(detail::canonical_key(w0), 0);
  queue.push_back(0);

  auto path_to = [&](std::uint32_t id) {
    std::vector<std::size_t> order;
    for (std::uint32_t at = id; nodes[at].parent != UINT32_MAX; at = nodes[at].parent)
      order.push_back(nodes[at].via_robot);
    std::reverse(order.begin(), order.end());
    return order;
  };

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    if (qi >= state_budget) {
      res.depth_exceeded = queue.size() - qi;
      break;
    }
    std::uint32_t id = queue[qi];
    ++res.states_visited;
    const World snapshot_w = nodes[id].w;

    bool formed = true;
    for (const Robot& r : snapshot_w.config.robots)
      formed = formed && r.light == Light::Done;
    formed = formed && pattern_formed(snapshot_w.config, targets.ordered);
    if (formed) {
      ++res.success_leaves;
      continue;
    }

    bool any_edge = false;
    for (std::size_t i = 0; i < snapshot_w.size(); ++i) {
      World next = snapshot_w;
      if (!next.pending[i]) {
        Snapshot snap = take_snapshot(next.config, next.config.robots[i].id);
        Action a = controller ? controller(snap, targets) : compute(snap, targets);
        if (!look_event(next, i, a)) continue;  // null look: self-loop
      } else {
        try {
          move_event(next, i);
        } catch (const CollisionError&) {
          ++res.collision_edges;
          if (!res.counterexample) {
            auto order = path_to(id);
            order.push_back(i);
            res.counterexample = order;
          }
          any_edge = true;
          continue;
        }
      }
      any_edge = true;
      std::string key = detail::canonical_key(next);
      auto [it, fresh] = seen.emplace(key, std::uint32_t(nodes.size()));
      if (fresh) {
        nodes.push_back({std::move(next), id, i});
        queue.push_back(it->second);
      }
    }
    if (!any_edge) {
      ++res.deadlock_leaves;
      if (!res.counterexample) res.counterexample = path_to(id);
    }
  }
  return res;
}

}  // namespace apf

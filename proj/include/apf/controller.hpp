#pragma once

// The per-robot decision function: Snapshot x TargetPattern -> Action.
// Three sub-algorithms keyed on the robot's own light:
//   phase 1 (off/terminal1/symmetric)  - candidate marking on the leftmost
//     occupied column, symmetry breaking against the next column, stable
//     configuration of two deciders;
//   phase 2 (decider/call/leader1, off) - rightward call sweep of the
//     deciders until an asymmetric column or a robot on K elects leader1,
//     then the leader1 corner walk to an empty quadrant and the leader light;
//   phase 3 (leader/done, off)          - compact line on the row above the
//     leader, then sequential dispatch to targets in the agreed frame.
// Every predicate is evaluated over the visible set only. A robot whose
// situation matches no rule waits: (own light, null move).

#include <cstdlib>
#include <optional>
#include <vector>

#include "apf/config.hpp"
#include "apf/geometry.hpp"
#include "apf/targets.hpp"

namespace apf {

/// Translation + y-orientation mapping the local frame onto the agreed frame
/// of phase 3 (leader pinned at (0,-1), off-robot side is positive y).
struct AgreedFrame {
  GridPoint leader_rel;  // leader position in the local frame ((0,0) if self)
  int orient = +1;       // +1: local up is agreed up

  GridPoint to_agreed(GridPoint local) const {
    return {local.x - leader_rel.x, orient * (local.y - leader_rel.y) - 1};
  }
};

namespace ctrl {

// Local view around the observer at (0,0). Entries are re-sorted so the
// action never depends on presentation order.
struct View {
  Light self;
  std::vector<SnapshotEntry> others;

  explicit View(const Snapshot& s) : self(s.self_light), others(s.others) {
    std::sort(others.begin(), others.end());
  }

  std::vector<SnapshotEntry> column(int x) const {
    std::vector<SnapshotEntry> out;
    for (const auto& e : others)
      if (e.rel.x == x) out.push_back(e);
    return out;
  }
  std::optional<int> left_col_x() const {
    std::optional<int> best;
    for (const auto& e : others)
      if (e.rel.x < 0 && (!best || e.rel.x > *best)) best = e.rel.x;
    return best;
  }
  std::optional<int> right_col_x() const {
    std::optional<int> best;
    for (const auto& e : others)
      if (e.rel.x > 0 && (!best || e.rel.x < *best)) best = e.rel.x;
    return best;
  }
  std::vector<SnapshotEntry> left_immediate() const {
    auto x = left_col_x();
    return x ? column(*x) : std::vector<SnapshotEntry>{};
  }
  std::vector<SnapshotEntry> right_immediate() const {
    auto x = right_col_x();
    return x ? column(*x) : std::vector<SnapshotEntry>{};
  }
  bool any_left_open() const {
    for (const auto& e : others)
      if (e.rel.x < 0) return true;
    return false;
  }
  bool any_left_closed() const {
    for (const auto& e : others)
      if (e.rel.x <= 0) return true;
    return false;
  }
  bool any_upper_closed() const {
    for (const auto& e : others)
      if (e.rel.y >= 0) return true;
    return false;
  }
  bool any_lower_closed() const {
    for (const auto& e : others)
      if (e.rel.y <= 0) return true;
    return false;
  }
  /// No own-column robot strictly above, or none strictly below.
  bool self_terminal() const {
    bool above = false, below = false;
    for (const auto& e : others) {
      if (e.rel.x != 0) continue;
      (e.rel.y > 0 ? above : below) = true;
    }
    return !above || !below;
  }
  bool any_light(Light l) const {
    for (const auto& e : others)
      if (e.light == l) return true;
    return false;
  }
};

inline int count_light(const std::vector<SnapshotEntry>& es, Light l) {
  int n = 0;
  for (const auto& e : es) n += (e.light == l);
  return n;
}
inline bool all_light(const std::vector<SnapshotEntry>& es, Light l) {
  for (const auto& e : es)
    if (e.light != l) return false;
  return true;
}
inline const SnapshotEntry* first_light(const std::vector<SnapshotEntry>& es, Light l) {
  for (const auto& e : es)
    if (e.light == l) return &e;
  return nullptr;
}

inline std::vector<GridPoint> points_of(const std::vector<SnapshotEntry>& es) {
  std::vector<GridPoint> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(e.rel);
  return out;
}

/// Is the observer (doubled y = 0) strictly on the dominant side of the
/// column holding `ri`, judged against axis k?
inline bool self_in_dominant_half(const std::vector<SnapshotEntry>& ri, HorizontalAxis k) {
  if (ri.empty()) return false;
  Side dom = dominant_side(ri.front().rel.x, points_of(ri), k);
  if (dom == Side::Above) return 0 > k.y2;
  if (dom == Side::Below) return 0 < k.y2;
  return false;
}

inline bool column_symmetric(const std::vector<SnapshotEntry>& col, HorizontalAxis k) {
  if (col.empty()) return true;
  return line_symmetric(col.front().rel.x, points_of(col), k);
}

/// Robot on the grid point K intersect the column, if that cell exists.
inline const SnapshotEntry* on_axis_entry(const std::vector<SnapshotEntry>& col, HorizontalAxis k) {
  for (const auto& e : col)
    if (2 * e.rel.y == k.y2) return &e;
  return nullptr;
}

/// Distance-to-K along a column is strictly V-shaped in the row, so being
/// weakly nearest among the visible own-column neighbours is being nearest
/// on the whole column. Ties straddling a half-integer K both qualify.
inline bool self_closest_to_axis(const View& v, HorizontalAxis k) {
  int self_dist = std::abs(-k.y2);
  for (const auto& e : v.others) {
    if (e.rel.x != 0) continue;
    if (std::abs(2 * e.rel.y - k.y2) < self_dist) return false;
  }
  return true;
}

}  // namespace ctrl

// ---------------------------------------------------------------------------
// Phase 1
// ---------------------------------------------------------------------------

inline Action phase1_step(const Snapshot& s) {
  using namespace ctrl;
  const Action wait{s.self_light, Move::Null};
  View v(s);

  if (s.self_light == Light::Off) {
    if (v.self_terminal() && !v.any_left_open() &&
        count_light(v.right_immediate(), Light::Leader1) == 0)
      return {Light::Terminal1, Move::Left};
    auto li = v.left_immediate();
    if (count_light(li, Light::Terminal1) == 2) {
      std::vector<SnapshotEntry> t1s;
      for (const auto& e : li)
        if (e.light == Light::Terminal1) t1s.push_back(e);
      HorizontalAxis k{t1s[0].rel.y + t1s[1].rel.y};
      if (k.y2 == 0) return {Light::Leader1, Move::Null};
    }
    return wait;
  }

  if (s.self_light == Light::Terminal1) {
    // A visible leader1 or leader ends the candidacy outright. The paper
    // demotes on leader1 at K intersect R_I or on the own column; a walking
    // leader1 can also surface on any other column (it crosses them on its
    // cleared row), and a candidate that held on would wedge the walk.
    if (v.any_light(Light::Leader1) || v.any_light(Light::Leader))
      return {Light::Off, Move::Null};
    auto own = v.column(0);
    if (const SnapshotEntry* partner = first_light(own, Light::Terminal1)) {
      HorizontalAxis k{partner->rel.y};
      auto ri = v.right_immediate();
      const SnapshotEntry* on_k = on_axis_entry(ri, k);
      if (on_k == nullptr) {
        if (column_symmetric(ri, k)) return {Light::Symmetric, Move::Null};
        if (self_in_dominant_half(ri, k)) return {Light::Leader1, Move::Null};
        return wait;
      }
      if (on_k->light == Light::Leader1) return {Light::Off, Move::Null};
      return wait;
    }
    if (first_light(own, Light::Symmetric)) return {Light::Symmetric, Move::Null};
    if (first_light(own, Light::Leader1) || first_light(own, Light::Off))
      return {Light::Off, Move::Null};
    if (own.empty() && all_light(v.right_immediate(), Light::Off))
      return {Light::Leader1, Move::Null};
    return wait;
  }

  if (s.self_light == Light::Symmetric) {
    // Same demotion as for terminal1. A symmetric robot coexists with a
    // winner only when a pair of occlusion-induced restarts got this far;
    // walking blindly from there can cross the winner's path.
    if (v.any_light(Light::Leader1) || v.any_light(Light::Leader))
      return {Light::Off, Move::Null};
    auto own = v.column(0);
    const SnapshotEntry* partner = first_light(own, Light::Symmetric);
    if (!partner) partner = first_light(own, Light::Decider);
    if (partner) {
      if (v.any_upper_closed() && v.any_lower_closed())
        return {Light::Symmetric, partner->rel.y > 0 ? Move::Down : Move::Up};
      return {Light::Decider, Move::Null};
    }
    return wait;
  }

  return wait;
}

// ---------------------------------------------------------------------------
// Phase 2
// ---------------------------------------------------------------------------

inline Action phase2_step(const Snapshot& s) {
  using namespace ctrl;
  const Action wait{s.self_light, Move::Null};
  View v(s);

  if (s.self_light == Light::Decider) {
    // Any visible leader1 or leader means the election already happened and
    // this decider is obsolete. The paper demotes only on R_I or L_V
    // sightings, but the walking winner can leave those positions before
    // this robot's next look.
    if (v.any_light(Light::Leader1) || v.any_light(Light::Leader))
      return {Light::Off, Move::Null};
    auto own = v.column(0);
    auto ri = v.right_immediate();
    const SnapshotEntry* partner = first_light(own, Light::Decider);
    HorizontalAxis k{partner ? partner->rel.y : 0};
    if (partner && on_axis_entry(ri, k) == nullptr) {
      if (column_symmetric(ri, k)) {
        if (!ri.empty() && all_light(ri, Light::Call)) return {Light::Decider, Move::Right};
        return wait;
      }
      if (self_in_dominant_half(ri, k)) return {Light::Leader1, Move::Null};
      return wait;
    }
    if (first_light(ri, Light::Decider)) return {Light::Decider, Move::Right};
    if (first_light(own, Light::Call) &&
        count_light(v.left_immediate(), Light::Decider) == 0) {
      if (!ri.empty() && all_light(ri, Light::Call)) return {Light::Decider, Move::Right};
      return wait;
    }
    return wait;
  }

  if (s.self_light == Light::Off) {
    auto li = v.left_immediate();
    if (count_light(li, Light::Decider) == 2) {
      std::vector<SnapshotEntry> ds;
      for (const auto& e : li)
        if (e.light == Light::Decider) ds.push_back(e);
      HorizontalAxis k{ds[0].rel.y + ds[1].rel.y};
      if (k.y2 == 0) return {Light::Leader1, Move::Null};
      // A visible own-column robot sitting on K preempts the whole column:
      // only that robot may elect (Lemma 5 reading).
      if (on_axis_entry(v.column(0), k) != nullptr) return wait;
      auto ri = v.right_immediate();
      if (column_symmetric(ri, k)) {
        if (self_closest_to_axis(v, k) || first_light(v.column(0), Light::Call))
          return {Light::Call, Move::Null};
        return wait;
      }
      if (v.self_terminal() && self_in_dominant_half(ri, k))
        return {Light::Leader1, Move::Null};
      return wait;
    }
    return wait;
  }

  if (s.self_light == Light::Call) {
    // Same widening as for the decider: a call outlives its purpose the
    // moment any winner is visible, wherever the walk has taken it.
    if (v.any_light(Light::Leader1) || v.any_light(Light::Leader))
      return {Light::Off, Move::Null};
    return wait;
  }

  if (s.self_light == Light::Leader1) {
    // Demote on a winner anywhere strictly left, before anything else: the
    // paper's prose reads "sees the other robot with light leader1 on its
    // left", and an occupied column between the two can keep the left winner
    // out of L_I (and so out of the walk guard) while it is plainly visible.
    // The left candidate always wins; left half emptiness is occlusion-proof,
    // so a rightful winner never has another candidate to its left.
    for (const auto& e : v.others)
      if (e.rel.x < 0 && (e.light == Light::Leader1 || e.light == Light::Leader))
        return {Light::Off, Move::Null};
    auto li = v.left_immediate();
    auto ri = v.right_immediate();
    // First disjunct needs an actual occupied L_I; an empty R_I counts as
    // all-off (k = 1 must proceed, a fresh election next to a still-lit
    // partner must not).
    bool guard = (!li.empty() && all_light(li, Light::Off)) ||
                 (!v.any_left_open() && all_light(ri, Light::Off));
    if (guard) {
      if (!v.any_upper_closed() || !v.any_lower_closed()) {
        if (v.any_left_closed()) return {Light::Leader1, Move::Left};
        return {Light::Leader, Move::Null};
      }
      if (!v.self_terminal()) return {Light::Leader1, Move::Left};
      auto own = v.column(0);
      if (!own.empty())
        return {Light::Leader1, own.front().rel.y > 0 ? Move::Down : Move::Up};
      return {Light::Leader1, Move::Up};  // singleton: private positive y
    }
    return wait;
  }

  return wait;
}

// ---------------------------------------------------------------------------
// Phase 3
// ---------------------------------------------------------------------------

namespace ctrl {

inline Move agreed_step(GridPoint from, GridPoint to_cell, int orient) {
  if (to_cell.x != from.x) return to_cell.x > from.x ? Move::Right : Move::Left;
  int dy_local = orient * (to_cell.y - from.y);
  if (dy_local > 0) return Move::Up;
  if (dy_local < 0) return Move::Down;
  return Move::Null;
}

/// Target t_j embedded in the agreed frame: one row above the staging line
/// L_H1 so every dispatch path stays clear of the compact line.
inline GridPoint embedded_target(const TargetPattern& targets, std::size_t j) {
  GridPoint t = targets.at(j);
  return {t.x, t.y + 1};
}

inline Action line_move_step(Light light, GridPoint self_a, int j, int orient) {
  GridPoint next;
  if (self_a.y != 0) next = {self_a.x, self_a.y > 0 ? self_a.y - 1 : self_a.y + 1};
  else if (self_a.x != j) next = {self_a.x + (j > self_a.x ? 1 : -1), 0};
  else next = {j, -1};
  return {light, agreed_step(self_a, next, orient)};
}

inline Action target_move_step(Light light, GridPoint self_a, GridPoint t, int orient) {
  GridPoint next;
  if (self_a.y != t.y - 1) next = {self_a.x, self_a.y + (t.y - 1 > self_a.y ? 1 : -1)};
  else if (self_a.x != t.x) next = {self_a.x + (t.x > self_a.x ? 1 : -1), self_a.y};
  else next = t;
  return {light, agreed_step(self_a, next, orient)};
}

}  // namespace ctrl

/// Frame transform for a robot that sees a leader-lit robot (or is the
/// leader). Orientation: the open half of the leader's row holding the off
/// robots is positive y; a robot off that row knows its own side, a robot on
/// it votes with the visible off-row robots, and with nothing off-row the
/// private y-axis breaks the tie.
inline std::optional<AgreedFrame> agreed_frame(const Snapshot& s) {
  ctrl::View v(s);
  GridPoint leader_rel{0, 0};
  if (s.self_light != Light::Leader) {
    const SnapshotEntry* leader = ctrl::first_light(v.others, Light::Leader);
    if (!leader) return std::nullopt;
    leader_rel = leader->rel;
  }
  int orient = 0;
  if (leader_rel.y != 0) {
    orient = leader_rel.y < 0 ? +1 : -1;  // self is off the leader's row
  } else {
    int balance = 0;
    for (const auto& e : v.others) {
      if (e.rel.y == leader_rel.y) continue;
      balance += e.rel.y > leader_rel.y ? 1 : -1;
    }
    orient = balance != 0 ? (balance > 0 ? +1 : -1) : +1;
  }
  return AgreedFrame{leader_rel, orient};
}

inline Action phase3_step(const Snapshot& s, const TargetPattern& targets) {
  using namespace ctrl;
  const Action wait{s.self_light, Move::Null};
  const int n = static_cast<int>(targets.size());
  View v(s);

  if (s.self_light == Light::Done) return wait;

  if (s.self_light == Light::Leader) {
    if (v.any_light(Light::Off)) return wait;
    // A one-point pattern is any single position up to translation.
    if (n == 1) return {Light::Done, Move::Null};
    // Anchor the frame on the done robots: the lowest (then leftmost) done
    // is always visible from strictly below the done set, which is where
    // the leader lives for its entire walk.
    std::vector<SnapshotEntry> dones;
    for (const auto& e : v.others)
      if (e.light == Light::Done) dones.push_back(e);
    if (dones.empty()) return wait;
    int balance = 0;
    for (const auto& e : dones) balance += e.rel.y > 0 ? 1 : -1;
    int orient = balance >= 0 ? +1 : -1;
    GridPoint m_local = dones.front().rel;
    for (const auto& e : dones) {
      auto key = [&](GridPoint p) { return std::pair<int, int>(orient * p.y, p.x); };
      if (key(e.rel) < key(m_local)) m_local = e.rel;
    }
    GridPoint m_abstract = embedded_target(targets, 0);
    for (int j = 0; j + 1 < n; ++j) {
      GridPoint t = embedded_target(targets, j);
      if (std::pair(t.y, t.x) < std::pair(m_abstract.y, m_abstract.x)) m_abstract = t;
    }
    auto to_agreed = [&](GridPoint p) {
      return GridPoint{p.x - m_local.x + m_abstract.x, orient * (p.y - m_local.y) + m_abstract.y};
    };
    GridPoint self_a = to_agreed({0, 0});
    GridPoint t = embedded_target(targets, n - 1);
    if (self_a == t) return {Light::Done, Move::Null};
    return target_move_step(Light::Leader, self_a, t, orient);
  }

  if (s.self_light != Light::Off) return wait;

  auto frame = agreed_frame(s);
  if (!frame) return wait;
  const int o = frame->orient;
  GridPoint self_a = frame->to_agreed({0, 0});

  struct AgreedEntry {
    GridPoint pos;
    Light light;
    bool is_leader;
  };
  std::vector<AgreedEntry> ents;
  bool leader_taken = false;
  for (const auto& e : v.others) {
    bool is_leader = !leader_taken && e.light == Light::Leader && e.rel == frame->leader_rel;
    leader_taken = leader_taken || is_leader;
    ents.push_back({frame->to_agreed(e.rel), e.light, is_leader});
  }

  if (self_a.y >= 0) {
    // r_0 strictly below, leftmost on the own row, clear strip to the line.
    for (const auto& e : ents) {
      if (e.pos.y == self_a.y && e.pos.x < self_a.x) return wait;
      if (e.pos.y > -1 && e.pos.y < self_a.y) return wait;
    }
    std::vector<int> census;
    for (const auto& e : ents)
      if (e.pos.y == -1 && !e.is_leader) census.push_back(e.pos.x);
    std::sort(census.begin(), census.end());
    const int i = static_cast<int>(census.size());
    bool left_contig = true, right_anchored = true;
    for (int idx = 0; idx < i; ++idx) {
      left_contig = left_contig && census[idx] == idx + 1;
      right_anchored = right_anchored && census[idx] == n - i + idx;
    }
    bool done_seen = v.any_light(Light::Done);
    if (census.empty()) {
      if ((n == 2 || done_seen) && n >= 2) {
        GridPoint t = embedded_target(targets, n - 2);
        if (self_a == t) return {Light::Done, Move::Null};
        return target_move_step(Light::Off, self_a, t, o);
      }
      if (n >= 2) return line_move_step(Light::Off, self_a, 1, o);
      return wait;
    }
    if (left_contig) return line_move_step(Light::Off, self_a, i + 1, o);
    if (right_anchored && i < n - 1) {
      GridPoint t = embedded_target(targets, n - i - 2);
      if (self_a == t) return {Light::Done, Move::Null};
      return target_move_step(Light::Off, self_a, t, o);
    }
    return wait;  // census matches neither shape: hold position
  }

  if (self_a.y == -1) {
    // On the leader's row: lift to L_H1 once no off light remains above.
    for (const auto& e : ents)
      if (e.light == Light::Off && e.pos.y > -1) return wait;
    if (self_a.x >= 1) return {Light::Off, agreed_step(self_a, {self_a.x, 0}, o)};
    return wait;
  }

  return wait;
}

/// LineMove(j) from the spec surface: requires a derivable agreed frame.
inline Action line_move(int j, const Snapshot& s) {
  auto frame = agreed_frame(s);
  if (!frame) return {s.self_light, Move::Null};
  return ctrl::line_move_step(s.self_light, frame->to_agreed({0, 0}), j, frame->orient);
}

/// TargetMove(j) from the spec surface: navigates to the given target cell.
inline Action target_move(int j, const Snapshot& s, const TargetPattern& targets) {
  auto frame = agreed_frame(s);
  if (!frame) return {s.self_light, Move::Null};
  GridPoint t = targets.at(static_cast<std::size_t>(j));
  return ctrl::target_move_step(s.self_light, frame->to_agreed({0, 0}), t, frame->orient);
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// One Compute: pure, deterministic, total. Dispatch is keyed on the robot's
/// own light; an off robot follows the most advanced light it can see.
inline Action compute(const Snapshot& s, const TargetPattern& targets) {
  switch (s.self_light) {
    case Light::Leader:
    case Light::Done:
      return phase3_step(s, targets);
    case Light::Decider:
    case Light::Call:
    case Light::Leader1:
      return phase2_step(s);
    case Light::Terminal1:
    case Light::Symmetric:
      return phase1_step(s);
    case Light::Off: {
      bool p3 = false, p2 = false;
      for (const auto& e : s.others) {
        p3 = p3 || e.light == Light::Leader || e.light == Light::Done;
        p2 = p2 || e.light == Light::Decider || e.light == Light::Call ||
             e.light == Light::Leader1;
      }
      if (p3) return phase3_step(s, targets);
      if (p2) return phase2_step(s);
      return phase1_step(s);
    }
  }
  return {s.self_light, Move::Null};
}

}  // namespace apf

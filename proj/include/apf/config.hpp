#pragma once

// World state for the simulator: robots with persistent lights and a private
// y-chirality, obstruction-filtered local snapshots, atomic light+move
// application with collision detection, and the configuration classifiers
// (stable / leader / solvable / pattern formed).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apf/geometry.hpp"

namespace apf {

enum class Light : std::uint8_t {
  Off = 0,
  Terminal1,
  Symmetric,
  Decider,
  Call,
  Leader1,
  Leader,
  Done,
};

inline constexpr std::array<Light, 8> kAllLights = {
    Light::Off,     Light::Terminal1, Light::Symmetric, Light::Decider,
    Light::Call,    Light::Leader1,   Light::Leader,    Light::Done,
};

inline std::string_view light_name(Light l) {
  switch (l) {
    case Light::Off: return "off";
    case Light::Terminal1: return "terminal1";
    case Light::Symmetric: return "symmetric";
    case Light::Decider: return "decider";
    case Light::Call: return "call";
    case Light::Leader1: return "leader1";
    case Light::Leader: return "leader";
    case Light::Done: return "done";
  }
  return "?";
}

inline Light light_from_name(std::string_view s) {
  for (Light l : kAllLights)
    if (light_name(l) == s) return l;
  throw std::invalid_argument("unknown light name: " + std::string(s));
}

using RobotId = std::size_t;

/// Simulator-side robot record. The id never reaches the controller.
/// chirality is the robot's private positive-y direction as a multiplier on
/// global y; the x direction is agreed by all robots and never flips.
struct Robot {
  RobotId id = 0;
  GridPoint pos;
  Light light = Light::Off;
  int chirality = +1;
};

struct Configuration {
  std::vector<Robot> robots;

  const Robot& by_id(RobotId id) const {
    for (const Robot& r : robots)
      if (r.id == id) return r;
    throw std::out_of_range("unknown robot id");
  }
  Robot& by_id(RobotId id) {
    return const_cast<Robot&>(static_cast<const Configuration&>(*this).by_id(id));
  }

  std::vector<GridPoint> positions() const {
    std::vector<GridPoint> out;
    out.reserve(robots.size());
    for (const Robot& r : robots) out.push_back(r.pos);
    return out;
  }
};

/// One visible robot in the observer's local frame.
struct SnapshotEntry {
  GridPoint rel;  // (dx, chirality * dy)
  Light light = Light::Off;

  friend auto operator<=>(const SnapshotEntry&, const SnapshotEntry&) = default;
};

/// A robot's entire input: its own light plus the chirality-transformed
/// relative positions and lights of exactly the robots it can see.
struct Snapshot {
  Light self_light = Light::Off;
  std::vector<SnapshotEntry> others;
};

enum class Move : std::uint8_t { Null = 0, Up, Down, Left, Right };

inline std::string_view move_name(Move m) {
  switch (m) {
    case Move::Null: return "null";
    case Move::Up: return "up";
    case Move::Down: return "down";
    case Move::Left: return "left";
    case Move::Right: return "right";
  }
  return "?";
}

/// Outcome of one Compute: the light to show and a unit move, both expressed
/// in the robot's local frame and applied atomically at the Move event.
struct Action {
  Light new_light = Light::Off;
  Move move = Move::Null;

  friend bool operator==(const Action&, const Action&) = default;
};

struct CollisionError : std::runtime_error {
  RobotId mover;
  RobotId occupant;
  CollisionError(RobotId m, RobotId o)
      : std::runtime_error("collision: robot " + std::to_string(m) + " moved onto robot " +
                           std::to_string(o)),
        mover(m),
        occupant(o) {}
};

/// Local view of robot `id` against the current configuration. Entries come
/// out sorted by relative position; (0,0) never appears.
inline Snapshot take_snapshot(const Configuration& config, RobotId id) {
  const Robot& self = config.by_id(id);
  std::size_t self_idx = 0;
  for (std::size_t i = 0; i < config.robots.size(); ++i)
    if (config.robots[i].id == id) self_idx = i;

  std::vector<GridPoint> pos = config.positions();
  Snapshot snap;
  snap.self_light = self.light;
  for (std::size_t j : visible_set(pos, self_idx)) {
    const Robot& other = config.robots[j];
    snap.others.push_back(SnapshotEntry{
        {other.pos.x - self.pos.x, self.chirality * (other.pos.y - self.pos.y)}, other.light});
  }
  std::sort(snap.others.begin(), snap.others.end());
  return snap;
}

/// Global unit displacement of a local move for a robot with the given
/// chirality. Left/Right are shared; Up/Down flip with chirality.
inline GridPoint move_delta(Move m, int chirality) {
  switch (m) {
    case Move::Null: return {0, 0};
    case Move::Up: return {0, chirality};
    case Move::Down: return {0, -chirality};
    case Move::Left: return {-1, 0};
    case Move::Right: return {1, 0};
  }
  return {0, 0};
}

/// Applies light and move as one instantaneous event. Until this event the
/// robot shows its old light and old position. Throws CollisionError if the
/// destination vertex is occupied; the run is then a failure.
inline Configuration apply_action(const Configuration& config, RobotId id, const Action& action) {
  Configuration next = config;
  Robot& self = next.by_id(id);
  GridPoint dest = self.pos + move_delta(action.move, self.chirality);
  if (dest != self.pos) {
    for (const Robot& r : next.robots)
      if (r.id != id && r.pos == dest) throw CollisionError(id, r.id);
  }
  self.pos = dest;
  self.light = action.new_light;
  return next;
}

namespace detail {
inline std::vector<const Robot*> with_light(const Configuration& c, Light l) {
  std::vector<const Robot*> out;
  for (const Robot& r : c.robots)
    if (r.light == l) out.push_back(&r);
  return out;
}
}  // namespace detail

/// Stable configuration: exactly two deciders alone on one vertical line,
/// everything else off; the deciders' rows and column hold no other robot;
/// their left open half is empty and each has an empty closed half away from
/// its partner.
inline bool is_stable_configuration(const Configuration& config) {
  auto deciders = detail::with_light(config, Light::Decider);
  if (deciders.size() != 2) return false;
  const Robot* d1 = deciders[0];
  const Robot* d2 = deciders[1];
  if (d1->pos.x != d2->pos.x) return false;
  for (const Robot& r : config.robots) {
    if (r.id == d1->id || r.id == d2->id) continue;
    if (r.light != Light::Off) return false;
    if (r.pos.x == d1->pos.x) return false;
    if (r.pos.y == d1->pos.y || r.pos.y == d2->pos.y) return false;
    if (r.pos.x < d1->pos.x) return false;
  }
  for (const Robot* d : deciders) {
    bool upper_clear = true, lower_clear = true;
    for (const Robot& r : config.robots) {
      if (r.id == d->id) continue;
      if (r.pos.y >= d->pos.y) upper_clear = false;
      if (r.pos.y <= d->pos.y) lower_clear = false;
    }
    if (!upper_clear && !lower_clear) return false;
  }
  return true;
}

/// Leader configuration: one leader light, all others off, leader's row and
/// column clear, left open half empty, and one vertical open half empty.
inline bool is_leader_configuration(const Configuration& config) {
  auto leaders = detail::with_light(config, Light::Leader);
  if (leaders.size() != 1) return false;
  const Robot* l = leaders[0];
  bool upper_clear = true, lower_clear = true;
  for (const Robot& r : config.robots) {
    if (r.id == l->id) continue;
    if (r.light != Light::Off) return false;
    if (r.pos.x == l->pos.x || r.pos.y == l->pos.y) return false;
    if (r.pos.x < l->pos.x) return false;
    if (r.pos.y > l->pos.y) upper_clear = false;
    if (r.pos.y < l->pos.y) lower_clear = false;
  }
  return upper_clear || lower_clear;
}

/// Theorem-1 gate for an all-off configuration: solvable iff no horizontal
/// mirror axis that avoids every robot.
inline bool is_solvable(const std::vector<GridPoint>& positions) {
  return !reflection_axis(positions).has_value();
}

namespace detail {
/// Translate a point set so its min corner is the origin.
inline std::vector<GridPoint> canonical_translate(std::vector<GridPoint> pts) {
  if (pts.empty()) return pts;
  int mx = pts[0].x, my = pts[0].y;
  for (const GridPoint& p : pts) {
    mx = std::min(mx, p.x);
    my = std::min(my, p.y);
  }
  for (GridPoint& p : pts) p = {p.x - mx, p.y - my};
  std::sort(pts.begin(), pts.end());
  return pts;
}
}  // namespace detail

/// The robots share no origin and no y direction, so a formed pattern is a
/// translate of the target set, possibly mirrored in y (never in x).
inline bool pattern_formed(const Configuration& config, const std::vector<GridPoint>& targets) {
  if (config.robots.size() != targets.size())
    throw std::invalid_argument("pattern_formed: size mismatch");
  for (const Robot& r : config.robots)
    if (r.light != Light::Done) return false;
  std::vector<GridPoint> pos = detail::canonical_translate(config.positions());
  if (pos == detail::canonical_translate(targets)) return true;
  std::vector<GridPoint> flipped = targets;
  for (GridPoint& p : flipped) p.y = -p.y;
  return pos == detail::canonical_translate(flipped);
}

}  // namespace apf

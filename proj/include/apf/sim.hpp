#pragma once

// Adversarial discrete-event engine. Each robot's cycle is two events: a
// fused Look+Compute (snapshot against the current world; the computed light
// becomes visible here) and a later Move that applies the stored unit move.
// Between the two, other robots observe the new light at the old position:
// the paper's candidate-waiting arguments need a travelling robot's light to
// be readable before it lands. Policies choose the next event; a fairness
// bound keeps adversaries executable.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "apf/config.hpp"
#include "apf/controller.hpp"
#include "apf/targets.hpp"

namespace apf {

enum class EventKind : std::uint8_t { Look, Move };

struct TraceRecord {
  std::uint64_t seq = 0;
  RobotId robot = 0;
  EventKind kind = EventKind::Look;
  GridPoint pos_before, pos_after;
  Light light_before = Light::Off, light_after = Light::Off;
};

/// Scale parameters of the move bound: D = max of the initial and target
/// smallest-enclosing-rectangle dimensions (in grid cells) and k.
struct RunStats {
  int k = 0;
  long total_moves = 0;
  int m_ser = 0, n_ser = 0;  // initial SER height/width
  int M_ser = 0, N_ser = 0;  // target SER height/width
  long D = 1;
};

inline bool check_move_bound(const RunStats& stats, long c) {
  return stats.total_moves <= c * stats.k * stats.D;
}

enum class OutcomeKind : std::uint8_t { Success, Collision, Deadlock, Timeout };

inline std::string_view outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Success: return "success";
    case OutcomeKind::Collision: return "collision";
    case OutcomeKind::Deadlock: return "deadlock";
    case OutcomeKind::Timeout: return "timeout";
  }
  return "?";
}

struct Outcome {
  OutcomeKind kind = OutcomeKind::Timeout;
  RunStats stats;
  std::uint64_t events = 0;
  Configuration final_config;
  std::optional<std::pair<RobotId, RobotId>> collision;
};

struct UnsolvableError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Full engine state. Robot ids are their indices. A robot is idle (next
/// event Look) or holds exactly one pending unit move (next event Move).
struct World {
  Configuration config;
  std::vector<std::optional<Move>> pending;
  std::uint64_t event_counter = 0;
  // version bumps whenever the visible world changes; a robot whose last
  // Look against the current version produced a null intent is still waiting.
  std::uint64_t version = 1;
  std::vector<std::uint64_t> null_at_version;
  std::size_t pending_count = 0;

  explicit World(Configuration c)
      : config(std::move(c)),
        pending(config.robots.size()),
        null_at_version(config.robots.size(), 0) {}

  std::size_t size() const { return config.robots.size(); }
};

/// Applies a computed action's visible part at the Look+Compute event: the
/// light shows immediately, a non-null move is stored for the Move event.
/// Returns false for a null intent (same light, no move), which completes
/// the cycle on the spot.
inline bool look_event(World& w, std::size_t i, const Action& a) {
  Robot& self = w.config.robots[i];
  if (a.new_light == self.light && a.move == Move::Null) {
    w.null_at_version[i] = w.version;
    return false;
  }
  if (a.new_light != self.light) {
    self.light = a.new_light;
    ++w.version;
  }
  if (a.move != Move::Null) {
    w.pending[i] = a.move;
    ++w.pending_count;
  }
  return true;
}

/// Executes the stored move. Throws CollisionError if the destination is
/// occupied at this instant.
inline void move_event(World& w, std::size_t i) {
  Move m = *w.pending[i];
  w.pending[i].reset();
  --w.pending_count;
  w.config = apply_action(w.config, w.config.robots[i].id, {w.config.robots[i].light, m});
  ++w.version;
}

/// Idle robots enable their (fused) Look; pending robots enable their Move.
inline std::vector<std::pair<std::size_t, EventKind>> enabled_events(const World& w) {
  std::vector<std::pair<std::size_t, EventKind>> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    out.emplace_back(i, w.pending[i] ? EventKind::Move : EventKind::Look);
  return out;
}

/// The decision function: pure map from snapshot and pattern to action.
/// Tests may inject broken controllers to exercise the failure detectors.
using Controller = std::function<Action(const Snapshot&, const TargetPattern&)>;

class SchedulerPolicy {
 public:
  virtual ~SchedulerPolicy() = default;
  /// Chooses the robot for the next event; its kind is forced by its state.
  virtual std::size_t pick(const World& w) = 0;
};

class FSyncPolicy final : public SchedulerPolicy {
 public:
  std::size_t pick(const World& w) override {
    if (cursor_ < w.size()) return cursor_++;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w.pending[i]) return i;
    cursor_ = 0;
    return cursor_++;
  }

 private:
  std::size_t cursor_ = 0;  // looks issued this round
};

class RoundRobinSSyncPolicy final : public SchedulerPolicy {
 public:
  std::size_t pick(const World& w) override {
    if (w.pending[cursor_]) return cursor_;  // finish the cycle
    if (looked_) {
      looked_ = false;  // the look produced a null intent
      cursor_ = (cursor_ + 1) % w.size();
      return pick(w);
    }
    looked_ = true;
    return cursor_;
  }
  void on_event(const World& w, std::size_t robot, EventKind kind) {
    if (kind == EventKind::Move && robot == cursor_) {
      looked_ = false;
      cursor_ = (cursor_ + 1) % w.size();
    }
  }

 private:
  std::size_t cursor_ = 0;
  bool looked_ = false;
};

class RandomAsyncPolicy final : public SchedulerPolicy {
 public:
  explicit RandomAsyncPolicy(std::uint64_t seed, std::uint64_t fairness = 16)
      : rng_(seed), fairness_(fairness) {}

  std::size_t pick(const World& w) override {
    if (starved_.size() != w.size()) starved_.assign(w.size(), 0);
    std::uint64_t bound = fairness_ * w.size();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (starved_[i] >= bound) return chosen(i);
    std::uniform_int_distribution<std::size_t> d(0, w.size() - 1);
    return chosen(d(rng_));
  }

 private:
  std::size_t chosen(std::size_t i) {
    for (std::size_t j = 0; j < starved_.size(); ++j) ++starved_[j];
    starved_[i] = 0;
    return i;
  }
  std::mt19937_64 rng_;
  std::uint64_t fairness_;
  std::vector<std::uint64_t> starved_;
};

/// Starves a rotating victim for `delay` events at a time, so its pending
/// move lands on a world that changed since its snapshot. The fairness bound
/// still holds: any robot starved for fairness*k events runs next.
class LaggardAsyncPolicy final : public SchedulerPolicy {
 public:
  LaggardAsyncPolicy(std::uint64_t seed, std::uint64_t delay, std::uint64_t fairness = 16)
      : rng_(seed), delay_(delay), fairness_(fairness) {}

  std::size_t pick(const World& w) override {
    victim_ %= w.size();
    if (starved_.size() != w.size()) starved_.assign(w.size(), 0);
    if (w.size() == 1) return chosen(0);
    std::uint64_t bound = fairness_ * w.size();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (starved_[i] >= bound) return chosen(i);
    if (++held_ >= delay_) {
      std::size_t v = victim_;
      victim_ = (victim_ + 1) % w.size();
      held_ = 0;
      return chosen(v);
    }
    std::uniform_int_distribution<std::size_t> d(0, w.size() - 2);
    std::size_t i = d(rng_);
    return chosen(i >= victim_ ? i + 1 : i);
  }

 private:
  std::size_t chosen(std::size_t i) {
    for (std::size_t j = 0; j < starved_.size(); ++j) ++starved_[j];
    starved_[i] = 0;
    return i;
  }
  std::mt19937_64 rng_;
  std::uint64_t delay_;
  std::uint64_t fairness_;
  std::uint64_t held_ = 0;
  std::size_t victim_ = 0;
  std::vector<std::uint64_t> starved_;
};

/// Replays a recorded event order; used for trace replay and for checking
/// that synchronous schedules are also asynchronous ones.
class ForcedPolicy final : public SchedulerPolicy {
 public:
  explicit ForcedPolicy(std::vector<std::size_t> order) : order_(std::move(order)) {}
  std::size_t pick(const World&) override {
    if (at_ >= order_.size()) throw std::runtime_error("forced schedule exhausted");
    return order_[at_++];
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t at_ = 0;
};

inline std::unique_ptr<SchedulerPolicy> make_policy(std::string_view name, std::uint64_t seed,
                                                    std::uint64_t fairness = 16) {
  if (name == "random") return std::make_unique<RandomAsyncPolicy>(seed, fairness);
  if (name == "fsync") return std::make_unique<FSyncPolicy>();
  if (name == "ssync") return std::make_unique<RoundRobinSSyncPolicy>();
  if (name == "laggard")
    return std::make_unique<LaggardAsyncPolicy>(seed, std::max<std::uint64_t>(2, 2 * fairness),
                                                fairness);
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

/// Executes one event chosen by the policy. Returns the record; collisions
/// propagate as CollisionError.
inline TraceRecord step(World& w, const TargetPattern& targets, SchedulerPolicy& policy,
                        const Controller& controller = {}) {
  std::size_t i = policy.pick(w);
  EventKind kind = w.pending[i] ? EventKind::Move : EventKind::Look;
  const Robot& before = w.config.robots[i];
  TraceRecord rec{w.event_counter, before.id, kind, before.pos, before.pos,
                  before.light,    before.light};

  if (kind == EventKind::Look) {
    Snapshot snap = take_snapshot(w.config, before.id);
    Action a = controller ? controller(snap, targets) : compute(snap, targets);
    look_event(w, i, a);
    rec.light_after = w.config.robots[i].light;
  } else {
    move_event(w, i);  // throws on collision
    rec.pos_after = w.config.robots[i].pos;
    rec.light_after = w.config.robots[i].light;
  }
  ++w.event_counter;
  if (auto* rr = dynamic_cast<RoundRobinSSyncPolicy*>(&policy)) rr->on_event(w, i, kind);
  return rec;
}

namespace detail {
inline std::pair<int, int> ser_dims(const std::vector<GridPoint>& pts) {
  int min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const GridPoint& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  return {max_y - min_y + 1, max_x - min_x + 1};  // height, width
}
}  // namespace detail

inline RunStats make_stats(const std::vector<GridPoint>& initial,
                           const std::vector<GridPoint>& targets) {
  RunStats st;
  st.k = static_cast<int>(initial.size());
  auto [m, n] = detail::ser_dims(initial);
  auto [M, N] = detail::ser_dims(targets);
  st.m_ser = m;
  st.n_ser = n;
  st.M_ser = M;
  st.N_ser = N;
  st.D = std::max({long(m), long(n), long(M), long(N), long(st.k)});
  return st;
}

/// Full run from an all-off configuration. Rejects unsolvable or mismatched
/// inputs before any event. The sink, when given, receives every record.
inline Outcome run(const Configuration& initial, const TargetPattern& targets,
                   SchedulerPolicy& policy, std::uint64_t max_events,
                   const std::function<void(const TraceRecord&)>& sink = {},
                   const Controller& controller = {}) {
  if (initial.robots.size() != targets.size())
    throw std::invalid_argument("run: robot count differs from target count");
  for (const Robot& r : initial.robots)
    if (r.light != Light::Off) throw std::invalid_argument("run: initial lights must be off");
  std::vector<GridPoint> pos0 = initial.positions();
  if (!is_solvable(pos0)) throw UnsolvableError("initial configuration is mirror-symmetric");

  Outcome out;
  out.stats = make_stats(pos0, targets.ordered);
  World w(initial);
  std::size_t done_count = 0;

  while (true) {
    if (done_count == w.size() && pattern_formed(w.config, targets.ordered)) {
      out.kind = OutcomeKind::Success;
      break;
    }
    if (w.pending_count == 0) {
      bool quiescent = true;
      for (std::size_t i = 0; i < w.size() && quiescent; ++i)
        quiescent = w.null_at_version[i] == w.version;
      if (quiescent) {
        out.kind = OutcomeKind::Deadlock;
        break;
      }
    }
    if (w.event_counter >= max_events) {
      out.kind = OutcomeKind::Timeout;
      break;
    }
    try {
      TraceRecord rec = step(w, targets, policy, controller);
      if (rec.pos_after != rec.pos_before) ++out.stats.total_moves;
      done_count += (rec.light_after == Light::Done) - (rec.light_before == Light::Done);
      if (sink) sink(rec);
    } catch (const CollisionError& e) {
      out.kind = OutcomeKind::Collision;
      out.collision = {e.mover, e.occupant};
      break;
    }
  }
  out.events = w.event_counter;
  out.final_config = std::move(w.config);
  return out;
}

}  // namespace apf

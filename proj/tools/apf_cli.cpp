// apfgrid: simulate, generate, verify, explore, and render arbitrary
// pattern formation runs of luminous opaque robots on the infinite grid.
//
// Exit codes: 0 success, 2 collision/deadlock, 3 timeout or exhausted
// exploration budget, 4 unsolvable input, 64 malformed files or parameters.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "apf/io.hpp"
#include "apf/oracle.hpp"
#include "apf/sim.hpp"
#include "apf/svg.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitSafetyFailure = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitUnsolvable = 4;
constexpr int kExitUsage = 64;

struct RunFlags {
  std::string instance_path;
  std::string pattern_path;
  std::string policy = "random";
  std::uint64_t seed = 0;
  std::uint64_t fairness = 16;
  std::uint64_t max_events = 1000000;
  std::string trace_path;
  long bound_constant = 10;
  int campaign = 1;
};

int exit_code_for(apf::OutcomeKind kind) {
  switch (kind) {
    case apf::OutcomeKind::Success: return kExitSuccess;
    case apf::OutcomeKind::Collision:
    case apf::OutcomeKind::Deadlock: return kExitSafetyFailure;
    case apf::OutcomeKind::Timeout: return kExitTimeout;
  }
  return kExitUsage;
}

apf::Outcome one_run(const apf::InstanceFile& inst, const apf::TargetPattern& targets,
                     const RunFlags& flags, std::uint64_t seed, const std::string& trace_path) {
  auto policy = apf::make_policy(flags.policy, seed, flags.fairness);
  if (!trace_path.empty()) {
    apf::TraceWriter writer(trace_path);
    return apf::run(inst.to_configuration(), targets, *policy, flags.max_events,
                    [&](const apf::TraceRecord& r) { writer.write(r); });
  }
  return apf::run(inst.to_configuration(), targets, *policy, flags.max_events);
}

int cmd_run(const RunFlags& flags) {
  apf::InstanceFile inst = apf::load_instance(flags.instance_path);
  apf::PatternFile pat = apf::load_pattern(flags.pattern_path);
  if (inst.robots.size() != pat.targets.size()) {
    std::cerr << "error: " << inst.robots.size() << " robots but " << pat.targets.size()
              << " targets\n";
    return kExitUsage;
  }
  apf::TargetPattern targets = apf::order_targets(pat.targets);
  if (!apf::is_solvable(inst.robots)) {
    std::cerr << "error: initial configuration is mirror-symmetric about an unoccupied "
                 "horizontal axis (unsolvable)\n";
    return kExitUnsolvable;
  }

  if (flags.campaign <= 1) {
    apf::Outcome out = one_run(inst, targets, flags, flags.seed, flags.trace_path);
    std::cout << apf::stats_json(out, flags.bound_constant).dump(2) << "\n";
    return exit_code_for(out.kind);
  }

  // Campaign: independent seeded runs, two workers, per-run trace files.
  std::vector<apf::Outcome> outcomes(flags.campaign);
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= flags.campaign) return;
      std::string trace =
          flags.trace_path.empty() ? "" : flags.trace_path + "." + std::to_string(i);
      outcomes[i] = one_run(inst, targets, flags, flags.seed + i, trace);
    }
  };
  unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                        unsigned(flags.campaign));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  nlohmann::json report;
  report["runs"] = flags.campaign;
  int success = 0, collision = 0, deadlock = 0, timeout = 0;
  double max_c = 0;
  long max_moves = 0;
  bool bound_all = true;
  for (const apf::Outcome& o : outcomes) {
    switch (o.kind) {
      case apf::OutcomeKind::Success: ++success; break;
      case apf::OutcomeKind::Collision: ++collision; break;
      case apf::OutcomeKind::Deadlock: ++deadlock; break;
      case apf::OutcomeKind::Timeout: ++timeout; break;
    }
    if (o.kind == apf::OutcomeKind::Success) {
      max_c = std::max(max_c, double(o.stats.total_moves) / (double(o.stats.k) * o.stats.D));
      max_moves = std::max(max_moves, o.stats.total_moves);
      bound_all = bound_all && apf::check_move_bound(o.stats, flags.bound_constant);
    }
  }
  report["success"] = success;
  report["collision"] = collision;
  report["deadlock"] = deadlock;
  report["timeout"] = timeout;
  report["max_total_moves"] = max_moves;
  report["max_empirical_constant"] = max_c;
  report["bound_constant"] = flags.bound_constant;
  report["bound_holds_all"] = bound_all;
  std::cout << report.dump(2) << "\n";
  if (collision || deadlock) return kExitSafetyFailure;
  if (timeout) return kExitTimeout;
  return kExitSuccess;
}

int cmd_generate(int k, int spread, std::uint64_t seed, const std::string& out_instance,
                 const std::string& out_pattern) {
  if (k < 1 || spread < k) {
    std::cerr << "error: need robots >= 1 and spread >= robots\n";
    return kExitUsage;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, spread);
  auto sample = [&] {
    while (true) {
      std::set<apf::GridPoint> s;
      while (int(s.size()) < k) s.insert({coord(rng), coord(rng)});
      std::vector<apf::GridPoint> pts(s.begin(), s.end());
      if (apf::is_solvable(pts)) return pts;
    }
  };
  apf::InstanceFile inst;
  inst.robots = sample();
  apf::PatternFile pat;
  pat.targets = sample();
  apf::save_instance(inst, out_instance);
  apf::save_pattern(pat, out_pattern);
  std::cout << "wrote " << out_instance << " and " << out_pattern << "\n";
  return kExitSuccess;
}

int cmd_verify(int count, std::uint64_t seed, int max_robots, int coord_range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-coord_range, coord_range);
  for (int trial = 0; trial < count; ++trial) {
    std::set<apf::GridPoint> s;
    int n = 1 + int(rng() % std::uint64_t(max_robots));
    while (int(s.size()) < n) s.insert({coord(rng), coord(rng)});
    std::vector<apf::GridPoint> pos(s.begin(), s.end());

    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (apf::visible_set(pos, i) != apf::brute_visibility(pos, i)) {
        nlohmann::json repro;
        repro["check"] = "visibility";
        repro["observer"] = i;
        repro["robots"] = nlohmann::json::array();
        for (const auto& p : pos) repro["robots"].push_back({p.x, p.y});
        std::cerr << "divergence at trial " << trial << ":\n" << repro.dump(2) << "\n";
        return 1;
      }
    }
    if (apf::is_solvable(pos) != apf::brute_solvability(pos)) {
      nlohmann::json repro;
      repro["check"] = "solvability";
      repro["robots"] = nlohmann::json::array();
      for (const auto& p : pos) repro["robots"].push_back({p.x, p.y});
      std::cerr << "divergence at trial " << trial << ":\n" << repro.dump(2) << "\n";
      return 1;
    }
  }
  std::cout << "verified " << count << " random configurations: visibility and solvability "
            << "agree with the brute-force oracles\n";
  return kExitSuccess;
}

int cmd_explore(const std::string& instance_path, const std::string& pattern_path,
                std::size_t depth, const std::string& trace_path) {
  apf::InstanceFile inst = apf::load_instance(instance_path);
  apf::PatternFile pat = apf::load_pattern(pattern_path);
  if (inst.robots.size() != pat.targets.size()) {
    std::cerr << "error: robot/target count mismatch\n";
    return kExitUsage;
  }
  apf::TargetPattern targets = apf::order_targets(pat.targets);
  if (!apf::is_solvable(inst.robots)) {
    std::cerr << "error: unsolvable instance\n";
    return kExitUnsolvable;
  }
  apf::ExplorationResult res = apf::explore_all_schedules(inst.to_configuration(), targets, depth);

  nlohmann::json report;
  report["states_visited"] = res.states_visited;
  report["success_leaves"] = res.success_leaves;
  report["deadlock_leaves"] = res.deadlock_leaves;
  report["collision_edges"] = res.collision_edges;
  report["depth_exceeded"] = res.depth_exceeded;
  std::cout << report.dump(2) << "\n";

  if (res.counterexample && !trace_path.empty()) {
    // Replay the counterexample schedule through the engine to emit it in
    // the standard trace schema.
    apf::TraceWriter writer(trace_path);
    apf::ForcedPolicy forced(*res.counterexample);
    apf::run(inst.to_configuration(), targets, forced, res.counterexample->size() + 1,
             [&](const apf::TraceRecord& r) { writer.write(r); });
  }
  if (res.collision_edges || res.deadlock_leaves) return kExitSafetyFailure;
  if (res.depth_exceeded) return kExitTimeout;
  return kExitSuccess;
}

int cmd_render(const std::string& trace_path, const std::string& pattern_path,
               const std::string& out_path) {
  std::vector<apf::TraceRecord> trace = apf::load_trace(trace_path);
  std::vector<apf::GridPoint> targets;
  if (!pattern_path.empty()) targets = apf::load_pattern(pattern_path).targets;
  std::string svg = apf::render_trace_svg(trace, targets);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  out << svg;
  std::cout << "wrote " << out_path << "\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arbitrary pattern formation by asynchronous opaque luminous robots on the "
               "infinite grid: simulator, verifier, and exhaustive explorer"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "simulate one instance (or a seeded campaign)");
  run->add_option("--instance", rf.instance_path, "instance JSON file")->required();
  run->add_option("--pattern", rf.pattern_path, "pattern JSON file")->required();
  run->add_option("--policy", rf.policy, "random|ssync|fsync|laggard")
      ->check(CLI::IsMember({"random", "ssync", "fsync", "laggard"}));
  run->add_option("--seed", rf.seed, "scheduler seed");
  run->add_option("--fairness", rf.fairness, "fairness bound B (window B*k events)");
  run->add_option("--max-events", rf.max_events, "event budget before timeout");
  run->add_option("--trace", rf.trace_path, "write JSONL trace here");
  run->add_option("--bound-constant", rf.bound_constant, "c for the c*k*D move bound check");
  run->add_option("--campaign", rf.campaign, "number of independent seeded runs");

  int gen_k = 0, gen_spread = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out_instance = "instance.json", gen_out_pattern = "pattern.json";
  CLI::App* gen = app.add_subcommand("generate", "sample a solvable instance and pattern");
  gen->add_option("--robots", gen_k, "robot count k")->required();
  gen->add_option("--spread", gen_spread, "coordinates sampled in [0,spread]^2")->required();
  gen->add_option("--seed", gen_seed, "sampler seed");
  gen->add_option("--out-instance", gen_out_instance, "instance output path");
  gen->add_option("--out-pattern", gen_out_pattern, "pattern output path");

  int verify_count = 1000, verify_robots = 20, verify_range = 30;
  std::uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "compare fast geometry against the oracles");
  verify->add_option("--count", verify_count, "number of random configurations");
  verify->add_option("--seed", verify_seed, "sampler seed");
  verify->add_option("--max-robots", verify_robots, "robots per configuration at most");
  verify->add_option("--coord-range", verify_range, "coordinates in [-range, range]");

  std::string ex_instance, ex_pattern, ex_trace;
  std::size_t ex_depth = 100000;
  CLI::App* explore = app.add_subcommand("explore", "walk every schedule of a tiny instance");
  explore->add_option("--instance", ex_instance, "instance JSON file")->required();
  explore->add_option("--pattern", ex_pattern, "pattern JSON file")->required();
  explore->add_option("--depth", ex_depth, "state budget");
  explore->add_option("--trace", ex_trace, "write a counterexample trace here");

  std::string render_trace, render_pattern, render_out = "trace.svg";
  CLI::App* render = app.add_subcommand("render", "draw a trace as a static SVG");
  render->add_option("--trace", render_trace, "JSONL trace file")->required();
  render->add_option("--pattern", render_pattern, "pattern JSON (drawn as outlines)");
  render->add_option("--out", render_out, "SVG output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(rf);
    if (gen->parsed()) return cmd_generate(gen_k, gen_spread, gen_seed, gen_out_instance,
                                           gen_out_pattern);
    if (verify->parsed()) return cmd_verify(verify_count, verify_seed, verify_robots,
                                            verify_range);
    if (explore->parsed()) return cmd_explore(ex_instance, ex_pattern, ex_depth, ex_trace);
    if (render->parsed()) return cmd_render(render_trace, render_pattern, render_out);
  } catch (const apf::UnsolvableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsolvable;
  } catch (const apf::FileFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

#pragma once

// File formats of the harness: instance/pattern JSON, the append-only JSONL
// trace stream, and the stats report. All serialization is deterministic so
// identical flags and seeds give byte-identical outputs.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "apf/config.hpp"
#include "apf/sim.hpp"

namespace apf {

struct InstanceFile {
  std::vector<GridPoint> robots;
  std::vector<int> chirality;  // empty or one entry per robot

  Configuration to_configuration() const {
    Configuration c;
    for (std::size_t i = 0; i < robots.size(); ++i) {
      int chir = chirality.empty() ? +1 : chirality[i];
      c.robots.push_back(Robot{i, robots[i], Light::Off, chir});
    }
    return c;
  }
};

struct PatternFile {
  std::vector<GridPoint> targets;
};

struct FileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(path + ": " + e.what());
  }
  return j;
}

inline std::vector<GridPoint> parse_points(const nlohmann::json& arr, const std::string& what) {
  if (!arr.is_array()) throw FileFormatError(what + " must be an array of [x,y] pairs");
  std::vector<GridPoint> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw FileFormatError(what + " entries must be integer [x,y] pairs");
    out.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return out;
}

}  // namespace io_detail

inline InstanceFile load_instance(const std::string& path) {
  nlohmann::json j = io_detail::parse_file(path);
  if (!j.contains("robots")) throw FileFormatError(path + ": missing \"robots\"");
  InstanceFile f;
  f.robots = io_detail::parse_points(j["robots"], "robots");
  if (f.robots.empty()) throw FileFormatError(path + ": no robots");
  {
    auto sorted = f.robots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw FileFormatError(path + ": duplicate robot positions");
  }
  if (j.contains("chirality")) {
    for (const auto& c : j["chirality"]) {
      if (!c.is_number_integer() || (c.get<int>() != 1 && c.get<int>() != -1))
        throw FileFormatError(path + ": chirality entries must be 1 or -1");
      f.chirality.push_back(c.get<int>());
    }
    if (!f.chirality.empty() && f.chirality.size() != f.robots.size())
      throw FileFormatError(path + ": chirality length must be 0 or the robot count");
  }
  return f;
}

inline PatternFile load_pattern(const std::string& path) {
  nlohmann::json j = io_detail::parse_file(path);
  if (!j.contains("targets")) throw FileFormatError(path + ": missing \"targets\"");
  PatternFile f;
  f.targets = io_detail::parse_points(j["targets"], "targets");
  if (f.targets.empty()) throw FileFormatError(path + ": no targets");
  auto sorted = f.targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw FileFormatError(path + ": duplicate targets");
  return f;
}

inline void save_instance(const InstanceFile& f, const std::string& path) {
  nlohmann::json j;
  j["robots"] = nlohmann::json::array();
  for (const GridPoint& p : f.robots) j["robots"].push_back({p.x, p.y});
  if (!f.chirality.empty()) j["chirality"] = f.chirality;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

inline void save_pattern(const PatternFile& f, const std::string& path) {
  nlohmann::json j;
  j["targets"] = nlohmann::json::array();
  for (const GridPoint& p : f.targets) j["targets"].push_back({p.x, p.y});
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

// --- trace stream ----------------------------------------------------------

inline nlohmann::json trace_record_json(const TraceRecord& r) {
  return nlohmann::json{{"seq", r.seq},
                        {"robot", r.robot},
                        {"kind", r.kind == EventKind::Look ? "look" : "move"},
                        {"pos_before", {r.pos_before.x, r.pos_before.y}},
                        {"pos_after", {r.pos_after.x, r.pos_after.y}},
                        {"light_before", light_name(r.light_before)},
                        {"light_after", light_name(r.light_after)}};
}

/// One JSON object per line, append-only.
class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path) : out_(path) {
    if (!out_) throw FileFormatError("cannot open trace file " + path);
  }
  void write(const TraceRecord& r) { out_ << trace_record_json(r).dump() << "\n"; }

 private:
  std::ofstream out_;
};

inline std::vector<TraceRecord> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open trace file " + path);
  std::vector<TraceRecord> out;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FileFormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    try {
      TraceRecord r;
      r.seq = j.at("seq").get<std::uint64_t>();
      r.robot = j.at("robot").get<RobotId>();
      std::string kind = j.at("kind").get<std::string>();
      if (kind != "look" && kind != "move")
        throw FileFormatError(path + ": bad kind " + kind);
      r.kind = kind == "look" ? EventKind::Look : EventKind::Move;
      r.pos_before = {j.at("pos_before").at(0).get<int>(), j.at("pos_before").at(1).get<int>()};
      r.pos_after = {j.at("pos_after").at(0).get<int>(), j.at("pos_after").at(1).get<int>()};
      r.light_before = light_from_name(j.at("light_before").get<std::string>());
      r.light_after = light_from_name(j.at("light_after").get<std::string>());
      out.push_back(r);
    } catch (const FileFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FileFormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  // A move must follow its own look with nothing of that robot in between.
  std::vector<int> phase;  // 0 = expects look, 1 = expects move
  for (const TraceRecord& r : out) {
    if (r.robot >= phase.size()) phase.resize(r.robot + 1, 0);
    bool marks = r.kind == EventKind::Move &&
                 (r.pos_after != r.pos_before || r.light_after != r.light_before);
    if (r.kind == EventKind::Move && phase[r.robot] == 0 && marks)
      throw FileFormatError(path + ": move without a preceding look for robot " +
                            std::to_string(r.robot));
    phase[r.robot] = r.kind == EventKind::Look ? 1 : 0;
  }
  return out;
}

inline nlohmann::json stats_json(const Outcome& out, long bound_c) {
  nlohmann::json j;
  j["outcome"] = std::string(outcome_name(out.kind));
  j["k"] = out.stats.k;
  j["total_moves"] = out.stats.total_moves;
  j["events"] = out.events;
  j["m_ser"] = out.stats.m_ser;
  j["n_ser"] = out.stats.n_ser;
  j["M_ser"] = out.stats.M_ser;
  j["N_ser"] = out.stats.N_ser;
  j["D"] = out.stats.D;
  j["bound_constant"] = bound_c;
  j["bound_moves"] = bound_c * out.stats.k * out.stats.D;
  j["bound_holds"] = check_move_bound(out.stats, bound_c);
  j["empirical_constant"] =
      double(out.stats.total_moves) / (double(out.stats.k) * double(out.stats.D));
  if (out.collision)
    j["collision"] = {{"mover", out.collision->first}, {"occupant", out.collision->second}};
  return j;
}

}  // namespace apf

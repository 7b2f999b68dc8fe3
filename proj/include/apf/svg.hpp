#pragma once

// Static SVG rendering of a finished trace: grid lines, one trajectory per
// robot with segments tinted by the light shown while moving, start/end
// markers, and target cells as outlines. No interactivity.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "apf/config.hpp"
#include "apf/io.hpp"
#include "apf/sim.hpp"

namespace apf {

inline std::string_view light_color(Light l) {
  switch (l) {
    case Light::Off: return "#9e9e9e";
    case Light::Terminal1: return "#e6a700";
    case Light::Symmetric: return "#8e24aa";
    case Light::Decider: return "#d81b60";
    case Light::Call: return "#00897b";
    case Light::Leader1: return "#1e88e5";
    case Light::Leader: return "#0d47a1";
    case Light::Done: return "#2e7d32";
  }
  return "#000000";
}

/// Renders a loaded trace (plus the target pattern) to an SVG document.
inline std::string render_trace_svg(const std::vector<TraceRecord>& trace,
                                    const std::vector<GridPoint>& targets) {
  if (trace.empty()) throw FileFormatError("render: empty trace");
  int min_x = trace[0].pos_before.x, max_x = min_x;
  int min_y = trace[0].pos_before.y, max_y = min_y;
  auto grow = [&](GridPoint p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const TraceRecord& r : trace) {
    grow(r.pos_before);
    grow(r.pos_after);
  }
  for (const GridPoint& t : targets) grow(t);

  const int cell = 24, margin = 18;
  auto px = [&](int x) { return margin + (x - min_x) * cell; };
  // SVG y grows downward; the grid's y grows upward.
  auto py = [&](int y) { return margin + (max_y - y) * cell; };
  int width = px(max_x) + margin, height = py(min_y) + margin;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int x = min_x; x <= max_x; ++x)
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << py(max_y) << "\" x2=\"" << px(x) << "\" y2=\""
        << py(min_y) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
  for (int y = min_y; y <= max_y; ++y)
    svg << "<line x1=\"" << px(min_x) << "\" y1=\"" << py(y) << "\" x2=\"" << px(max_x)
        << "\" y2=\"" << py(y) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
  for (const GridPoint& t : targets)
    svg << "<rect x=\"" << px(t.x) - cell / 3 << "\" y=\"" << py(t.y) - cell / 3 << "\" width=\""
        << 2 * cell / 3 << "\" height=\"" << 2 * cell / 3
        << "\" fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"2\"/>\n";

  std::map<RobotId, GridPoint> start, end;
  std::map<RobotId, Light> last_light;
  for (const TraceRecord& r : trace) {
    if (!start.count(r.robot)) start[r.robot] = r.pos_before;
    end[r.robot] = r.pos_after;
    last_light[r.robot] = r.light_after;
    if (r.kind == EventKind::Move && r.pos_after != r.pos_before)
      svg << "<line x1=\"" << px(r.pos_before.x) << "\" y1=\"" << py(r.pos_before.y)
          << "\" x2=\"" << px(r.pos_after.x) << "\" y2=\"" << py(r.pos_after.y) << "\" stroke=\""
          << light_color(r.light_after) << "\" stroke-width=\"2.5\" stroke-linecap=\"round\"/>\n";
  }
  for (const auto& [id, p] : start)
    svg << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
        << "\" r=\"4\" fill=\"none\" stroke=\"#616161\" stroke-width=\"1.5\"/>\n";
  for (const auto& [id, p] : end)
    svg << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"5\" fill=\""
        << light_color(last_light[id]) << "\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace apf

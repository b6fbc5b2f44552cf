#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasp/env.hpp"
#include "grasp/grid.hpp"

namespace grasp {

class TraceMismatchError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace svg_detail {

inline constexpr double kCell = 40.0;
inline constexpr double kMargin = 28.0;

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline double cx(int col) { return kMargin + (col + 0.5) * kCell; }
inline double cy(int row) { return kMargin + (row + 0.5) * kCell; }

inline std::string star(double x, double y, double r) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double radius = (k % 2 == 0) ? r : r * 0.45;
    const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    if (k) pts += ' ';
    pts += num(x + radius * std::cos(a)) + "," + num(y + radius * std::sin(a));
  }
  return "<polygon class=\"take\" points=\"" + pts + "\" fill=\"#f5c518\" stroke=\"#8a6d00\" stroke-width=\"0.8\"/>\n";
}

}  // namespace svg_detail

/// Draws the grid with its E/O/A glyphs, an arrow for every movement that
/// took effect, and a star for every TAKE issued (whether or not it
/// collected anything). The trace is replayed first and must match.
inline std::string export_trace_svg(const Grid& grid, const ConstraintSet& constraints,
                                    const std::vector<TraceEntry>& trace) {
  using namespace svg_detail;
  Episode episode(grid, constraints);
  struct Segment {
    Position from, to;
  };
  std::vector<Segment> segments;
  std::vector<Position> takes;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Position before = episode.agent();
    Effect effect;
    try {
      effect = episode.apply(trace[i].action);
    } catch (const StepBudgetExhausted&) {
      throw TraceMismatchError("trace is longer than the step budget");
    }
    if (effect != trace[i].effect)
      throw TraceMismatchError("trace does not replay on this grid: step " + std::to_string(i) + " (" +
                               std::string(to_string(trace[i].action)) + ") expected " +
                               std::string(to_string(trace[i].effect)) + ", got " + std::string(to_string(effect)));
    if (is_movement(trace[i].action) && effect == Effect::Applied) segments.push_back({before, episode.agent()});
    if (trace[i].action == Action::Take) takes.push_back(before);
  }

  const double size = 2 * kMargin + kGridSide * kCell;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size) + "\" height=\"" + num(size) +
       "\" viewBox=\"0 0 " + num(size) + " " + num(size) + "\">\n";
  s += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
       "orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i < kGridSide; ++i) {
    s += "<text x=\"" + num(cx(i)) + "\" y=\"" + num(kMargin - 8) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" + std::to_string(i) + "</text>\n";
    s += "<text x=\"" + num(kMargin - 8) + "\" y=\"" + num(cy(i) + 4) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" + std::to_string(i) + "</text>\n";
  }
  for (int r = 0; r < kGridSide; ++r)
    for (int c = 0; c < kGridSide; ++c) {
      const Cell& cell = grid.at(r, c);
      const char* fill = cell.obstacle ? "#7f8c8d" : (cell.is_start ? "#d6eaf8" : "white");
      s += "<rect x=\"" + num(kMargin + c * kCell) + "\" y=\"" + num(kMargin + r * kCell) + "\" width=\"" + num(kCell) +
           "\" height=\"" + num(kCell) + "\" fill=\"" + fill + "\" stroke=\"#34495e\" stroke-width=\"1\"/>\n";
      const char glyph = cell.is_start ? 'A' : cell.obstacle ? 'O' : cell.energy >= 1 ? 'E' : ' ';
      if (glyph != ' ')
        s += "<text class=\"glyph\" x=\"" + num(cx(c)) + "\" y=\"" + num(cy(r) + 6) +
             "\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">" + glyph + "</text>\n";
    }
  for (const auto& seg : segments) {
    // Shorten both ends so consecutive arrows stay distinguishable.
    const double x1 = cx(seg.from.col), y1 = cy(seg.from.row), x2 = cx(seg.to.col), y2 = cy(seg.to.row);
    const double dx = x2 - x1, dy = y2 - y1, len = std::hypot(dx, dy);
    const double trim = kCell * 0.18;
    s += "<line class=\"move\" x1=\"" + num(x1 + dx / len * trim) + "\" y1=\"" + num(y1 + dy / len * trim) +
         "\" x2=\"" + num(x2 - dx / len * trim) + "\" y2=\"" + num(y2 - dy / len * trim) +
         "\" stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#arrow)\"/>\n";
  }
  std::map<int, int> per_cell;
  for (const Position p : takes) {
    const int k = per_cell[cell_index(p)]++;
    s += star(kMargin + (p.col + 1) * kCell - 7 - 9 * (k % 4), kMargin + p.row * kCell + 7 + 9 * (k / 4), 5.5);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace grasp

#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "grasp/grasp.hpp"

namespace grasp::tests {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(GRASP_FIXTURE_DIR) / rel; }

/// Builds a grid from eleven 11-character rows of ' ', 'E', 'O', 'A'.
inline Grid grid_from_rows(const std::array<std::string, kGridSide>& rows) {
  Grid g;
  Position start{-1, -1};
  for (int r = 0; r < kGridSide; ++r)
    for (int c = 0; c < kGridSide; ++c) {
      const char ch = rows[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(c));
      if (ch == 'A') start = {r, c};
      g.at(r, c).energy = ch == 'E' ? 1 : 0;
      g.at(r, c).obstacle = ch == 'O';
    }
  g.set_start(start);
  return g;
}

/// Shortest move count from `from` to any energy cell, by repeated
/// relaxation over all cells until nothing changes. -1 when unreachable.
inline int brute_force_distance(const Grid& g, Position from, ActionSet set) {
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::array<int, kGridCells> dist;
  dist.fill(kInf);
  dist[static_cast<std::size_t>(cell_index(from))] = 0;
  const auto deltas = moves(set);
  for (bool changed = true; changed;) {
    changed = false;
    for (int r = 0; r < kGridSide; ++r)
      for (int c = 0; c < kGridSide; ++c) {
        if (g.at(r, c).obstacle && Position{r, c} != from) continue;
        for (Action a : deltas) {
          const Position d = delta(a);
          const Position prev{r - d.row, c - d.col};
          if (!in_bounds(prev) || (g.at(prev).obstacle && prev != from)) continue;
          const int via = dist[static_cast<std::size_t>(cell_index(prev))] + 1;
          auto& here = dist[static_cast<std::size_t>(r * kGridSide + c)];
          if (via < here) {
            here = via;
            changed = true;
          }
        }
      }
  }
  int best = kInf;
  for (int i = 0; i < kGridCells; ++i)
    if (g.cells()[static_cast<std::size_t>(i)].energy >= 1) best = std::min(best, dist[static_cast<std::size_t>(i)]);
  return best == kInf ? -1 : best;
}

/// Closed-form spiral cell, evaluated directly.
inline Position spiral_reference(int i, double eps_theta, double eps_r) {
  const double theta = i / 10.0 + eps_theta;
  const double r = i / (11.0 * 10.0 / (2.0 * std::numbers::pi)) + eps_r;
  return {static_cast<int>(std::floor(5.0 + r * std::cos(theta))), static_cast<int>(std::floor(5.0 + r * std::sin(theta)))};
}

}  // namespace grasp::tests

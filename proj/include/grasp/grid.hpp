#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grasp {

inline constexpr int kGridSide = 11;
inline constexpr int kGridCells = kGridSide * kGridSide;

struct Position {
  int row = 0;
  int col = 0;

  friend constexpr bool operator==(Position, Position) = default;
  friend constexpr auto operator<=>(Position, Position) = default;
};

constexpr bool in_bounds(Position p) noexcept {
  return p.row >= 0 && p.row < kGridSide && p.col >= 0 && p.col < kGridSide;
}

constexpr int cell_index(Position p) noexcept { return p.row * kGridSide + p.col; }

enum class DistributionKind { Random, VerticalSkew, HorizontalSkew, Cluster, Spiral };

inline constexpr std::array<DistributionKind, 5> kAllDistributions = {
    DistributionKind::Random, DistributionKind::VerticalSkew, DistributionKind::HorizontalSkew,
    DistributionKind::Cluster, DistributionKind::Spiral};

enum class StartMode { Inner, Outer };

inline constexpr std::array<StartMode, 2> kAllStartModes = {StartMode::Inner, StartMode::Outer};

inline std::string_view to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::Random: return "random";
    case DistributionKind::VerticalSkew: return "vertical-skew";
    case DistributionKind::HorizontalSkew: return "horizontal-skew";
    case DistributionKind::Cluster: return "cluster";
    case DistributionKind::Spiral: return "spiral";
  }
  return "?";
}

inline DistributionKind distribution_from_string(std::string_view s) {
  for (auto k : kAllDistributions)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown distribution: " + std::string(s));
}

inline std::string_view to_string(StartMode m) { return m == StartMode::Inner ? "inner" : "outer"; }

inline StartMode start_mode_from_string(std::string_view s) {
  if (s == "inner" || s == "in") return StartMode::Inner;
  if (s == "outer" || s == "out") return StartMode::Outer;
  throw std::invalid_argument("unknown start mode: " + std::string(s));
}

/// The 25-cell square spanning rows and columns 3..7.
constexpr bool in_inner_square(Position p) noexcept {
  return p.row >= 3 && p.row <= 7 && p.col >= 3 && p.col <= 7;
}

/// Sampled generative parameters. Only the fields relevant to the
/// distribution kind are meaningful; the complementary skew probabilities are
/// derived, never stored.
struct DistributionParams {
  double p = 0.0;       // Random
  double p_top = 0.0;   // VerticalSkew
  double p_left = 0.0;  // HorizontalSkew
  std::vector<Position> cluster_centers;  // Cluster; size is the cluster count
  std::uint64_t spiral_noise_seed = 0;    // Spiral

  double p_bottom() const noexcept { return 1.0 - p_top; }
  double p_right() const noexcept { return 1.0 - p_left; }
  int n_clusters() const noexcept { return static_cast<int>(cluster_centers.size()); }

  friend bool operator==(const DistributionParams&, const DistributionParams&) = default;
};

struct GridSpec {
  DistributionKind distribution = DistributionKind::Random;
  DistributionParams params;
  bool has_obstacles = false;
  StartMode start_mode = StartMode::Inner;
  int grid_index = 0;
  std::uint64_t seed = 0;

  /// "dist=<d>/obs=<0|1>/start=<in|out>/g=<n>"
  std::string id() const {
    return "dist=" + std::string(to_string(distribution)) + "/obs=" + (has_obstacles ? "1" : "0") +
           "/start=" + (start_mode == StartMode::Inner ? "in" : "out") + "/g=" + std::to_string(grid_index);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Cell {
  int energy = 0;
  bool obstacle = false;
  bool is_start = false;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

/// An 11x11 environment instance. Row-major, (0,0) top-left.
class Grid {
 public:
  Grid() { cells_[0].is_start = true; }

  Cell& at(Position p) { return cells_.at(static_cast<std::size_t>(cell_index(p))); }
  const Cell& at(Position p) const { return cells_.at(static_cast<std::size_t>(cell_index(p))); }
  Cell& at(int row, int col) { return at(Position{row, col}); }
  const Cell& at(int row, int col) const { return at(Position{row, col}); }

  Position start() const noexcept { return start_; }

  /// Moves the start marker; the new start cell is cleared of energy and obstacle.
  void set_start(Position p) {
    if (!in_bounds(p)) throw std::out_of_range("start position outside the grid");
    at(start_).is_start = false;
    start_ = p;
    Cell& c = at(p);
    c.is_start = true;
    c.energy = 0;
    c.obstacle = false;
  }

  const std::array<Cell, kGridCells>& cells() const noexcept { return cells_; }

  int total_energy() const noexcept {
    int sum = 0;
    for (const auto& c : cells_) sum += c.energy;
    return sum;
  }

  int obstacle_count() const noexcept {
    int n = 0;
    for (const auto& c : cells_) n += c.obstacle ? 1 : 0;
    return n;
  }

  /// Same cells and start; generation metadata is ignored.
  bool same_layout(const Grid& other) const noexcept {
    return start_ == other.start_ && cells_ == other.cells_;
  }

  GridSpec spec;

 private:
  std::array<Cell, kGridCells> cells_{};
  Position start_{0, 0};
};

}  // namespace grasp

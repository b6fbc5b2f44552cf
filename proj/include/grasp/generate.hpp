#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "grasp/grid.hpp"
#include "grasp/rng.hpp"

namespace grasp {

inline constexpr double kObstacleProbability = 0.1;
inline constexpr int kSpiralMaxStep = 110;
inline constexpr int kDefaultInstancesPerCombo = 100;

using EnergyMask = std::array<bool, kGridCells>;

/// Draws the per-instance parameters for a distribution kind.
inline DistributionParams sample_params(DistributionKind kind, Pcg32& rng) {
  DistributionParams params;
  auto skewed = [&rng] {
    return rng.bernoulli(0.5) ? rng.uniform(0.3, 0.4) : rng.uniform(0.6, 0.7);
  };
  switch (kind) {
    case DistributionKind::Random:
      params.p = rng.uniform(0.3, 0.7);
      break;
    case DistributionKind::VerticalSkew:
      params.p_top = skewed();
      break;
    case DistributionKind::HorizontalSkew:
      params.p_left = skewed();
      break;
    case DistributionKind::Cluster: {
      const int n = rng.between(3, 5);
      for (int i = 0; i < n; ++i) {
        const int a = rng.between(0, kGridSide - 1);
        const int b = rng.between(0, kGridSide - 1);
        params.cluster_centers.push_back({a, b});
      }
      break;
    }
    case DistributionKind::Spiral:
      params.spiral_noise_seed = rng.next_u64();
      break;
  }
  return params;
}

struct SpiralNoise {
  double theta = 0.0;
  double radius = 0.0;
};

/// Spiral point for step i with explicit noise. Returned unchecked; callers
/// bounds-check. The first coordinate is the row.
inline Position spiral_point(int step, SpiralNoise noise) {
  const double theta = step / 10.0 + noise.theta;
  const double r = step / (kGridSide * 10.0 / (2.0 * std::numbers::pi)) + noise.radius;
  const int x = static_cast<int>(std::floor(5.0 + r * std::cos(theta)));
  const int y = static_cast<int>(std::floor(5.0 + r * std::sin(theta)));
  return {x, y};
}

/// In-bounds cells visited by the noisy spiral walk, in step order. Revisits
/// are kept; out-of-bounds samples are skipped and the walk continues.
inline std::vector<Position> spiral_cells(Pcg32& rng) {
  std::vector<Position> out;
  for (int i = 0; i <= kSpiralMaxStep; ++i) {
    SpiralNoise noise;
    noise.theta = rng.uniform(-0.2, 0.2);
    noise.radius = rng.uniform(-0.2, 0.2);
    const Position p = spiral_point(i, noise);
    if (in_bounds(p)) out.push_back(p);
  }
  return out;
}

inline EnergyMask place_energy(const GridSpec& spec, Pcg32& rng) {
  EnergyMask mask{};
  const auto& params = spec.params;
  auto fill_bernoulli = [&](auto prob_for) {
    for (int r = 0; r < kGridSide; ++r)
      for (int c = 0; c < kGridSide; ++c)
        mask[static_cast<std::size_t>(cell_index({r, c}))] = rng.bernoulli(prob_for(r, c));
  };
  switch (spec.distribution) {
    case DistributionKind::Random:
      fill_bernoulli([&](int, int) { return params.p; });
      break;
    case DistributionKind::VerticalSkew:
      fill_bernoulli([&](int r, int) { return r <= 5 ? params.p_top : params.p_bottom(); });
      break;
    case DistributionKind::HorizontalSkew:
      fill_bernoulli([&](int, int c) { return c <= 5 ? params.p_left : params.p_right(); });
      break;
    case DistributionKind::Cluster:
      for (const Position center : params.cluster_centers) {
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            const Position p{center.row + dr, center.col + dc};
            if (in_bounds(p)) mask[static_cast<std::size_t>(cell_index(p))] = true;
          }
      }
      break;
    case DistributionKind::Spiral: {
      Pcg32 noise_rng(params.spiral_noise_seed);
      for (const Position p : spiral_cells(noise_rng)) mask[static_cast<std::size_t>(cell_index(p))] = true;
      break;
    }
  }
  return mask;
}

/// Each cell independently becomes an obstacle with probability 0.1.
/// Obstacles override energy.
inline void place_obstacles(Grid& grid, Pcg32& rng) {
  for (int r = 0; r < kGridSide; ++r)
    for (int c = 0; c < kGridSide; ++c)
      if (rng.bernoulli(kObstacleProbability)) {
        Cell& cell = grid.at(r, c);
        cell.obstacle = true;
        cell.energy = 0;
      }
}

inline std::vector<Position> start_region(StartMode mode) {
  std::vector<Position> cells;
  for (int r = 0; r < kGridSide; ++r)
    for (int c = 0; c < kGridSide; ++c)
      if (in_inner_square({r, c}) == (mode == StartMode::Inner)) cells.push_back({r, c});
  return cells;
}

/// Picks the start uniformly within the region, clearing whatever was there.
inline void place_start(Grid& grid, StartMode mode, Pcg32& rng) {
  const auto region = start_region(mode);
  grid.set_start(region[rng.below(static_cast<std::uint32_t>(region.size()))]);
}

/// Per-grid seed, independent of generation order.
inline std::uint64_t grid_seed(std::uint64_t master_seed, DistributionKind kind, bool has_obstacles,
                               StartMode mode, int grid_index) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(kind), has_obstacles ? 1u : 0u,
                  static_cast<std::uint64_t>(mode), static_cast<std::uint64_t>(grid_index));
}

/// Pure function of (distribution, has_obstacles, start_mode, grid_index, seed).
/// Any params already present in `spec` are replaced by freshly sampled ones.
inline Grid generate(GridSpec spec) {
  Pcg32 rng(spec.seed);
  spec.params = sample_params(spec.distribution, rng);
  const EnergyMask mask = place_energy(spec, rng);

  Grid grid;
  for (int i = 0; i < kGridCells; ++i)
    grid.at(i / kGridSide, i % kGridSide).energy = mask[static_cast<std::size_t>(i)] ? 1 : 0;
  if (spec.has_obstacles) place_obstacles(grid, rng);
  place_start(grid, spec.start_mode, rng);
  grid.spec = std::move(spec);
  return grid;
}

inline Grid generate(DistributionKind kind, bool has_obstacles, StartMode mode, int grid_index,
                     std::uint64_t master_seed) {
  GridSpec spec;
  spec.distribution = kind;
  spec.has_obstacles = has_obstacles;
  spec.start_mode = mode;
  spec.grid_index = grid_index;
  spec.seed = grid_seed(master_seed, kind, has_obstacles, mode, grid_index);
  return generate(std::move(spec));
}

/// Every (distribution, obstacles, start mode, index) combination, in
/// distribution-major order. 2000 grids at the default size.
inline std::vector<Grid> build_benchmark(std::uint64_t master_seed,
                                         int instances_per_combo = kDefaultInstancesPerCombo) {
  std::vector<Grid> grids;
  grids.reserve(static_cast<std::size_t>(instances_per_combo) * 20);
  for (auto kind : kAllDistributions)
    for (bool obstacles : {true, false})
      for (auto mode : kAllStartModes)
        for (int i = 0; i < instances_per_combo; ++i)
          grids.push_back(generate(kind, obstacles, mode, i, master_seed));
  return grids;
}

}  // namespace grasp

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grasp/action.hpp"
#include "grasp/env.hpp"
#include "grasp/rng.hpp"

namespace grasp {

inline constexpr int kRandomWalkForays = 6;
inline constexpr int kRandomWalkLength = 2 * kRandomWalkForays + kRandomWalkForays + 1;

enum class AgentKind { RandomWalk, GreedySearch, Llm };

/// Agent identity as written in results: "random-walk", "greedy", "llm:<model>".
struct AgentSpec {
  AgentKind kind = AgentKind::RandomWalk;
  std::string model;  // Llm only

  std::string name() const {
    switch (kind) {
      case AgentKind::RandomWalk: return "random-walk";
      case AgentKind::GreedySearch: return "greedy";
      case AgentKind::Llm: return "llm:" + model;
    }
    return "?";
  }

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

inline AgentSpec parse_agent(std::string_view name) {
  if (name == "random-walk") return {AgentKind::RandomWalk, {}};
  if (name == "greedy") return {AgentKind::GreedySearch, {}};
  if (name.starts_with("llm:") && name.size() > 4) return {AgentKind::Llm, std::string(name.substr(4))};
  throw std::invalid_argument("unknown agent: " + std::string(name));
}

struct RandomWalkOptions {
  /// Redraw moves that would leave the grid, tracked from the start cell.
  /// Obstacles are not consulted. Off by default (the fully grid-blind walk).
  bool resample_invalid = false;
};

/// Six (move, TAKE) pairs, the reversed complements of the moves, then DROP.
/// Always 19 actions. Without resampling the plan ignores the grid entirely.
inline std::vector<Action> random_walk_plan(ActionSet set, Pcg32& rng, RandomWalkOptions options = {},
                                            Position start = {}) {
  const auto choices = moves(set);
  std::array<Action, kRandomWalkForays> outbound{};
  Position pos = start;
  for (auto& m : outbound) {
    do {
      m = choices[rng.below(static_cast<std::uint32_t>(choices.size()))];
    } while (options.resample_invalid && !in_bounds(step(pos, m)));
    pos = step(pos, m);
  }

  std::vector<Action> plan;
  plan.reserve(kRandomWalkLength);
  for (auto m : outbound) {
    plan.push_back(m);
    plan.push_back(Action::Take);
  }
  for (auto it = outbound.rbegin(); it != outbound.rend(); ++it) plan.push_back(complement(*it));
  plan.push_back(Action::Drop);
  return plan;
}

/// Breadth-first search from `from` over non-obstacle cells using the moves
/// of `set`, expanding neighbours in a freshly shuffled order at every node.
/// Returns the move sequence to the first energy-bearing cell dequeued, or
/// nullopt when no energy is reachable. A path of length zero means the
/// agent is standing on energy.
inline std::optional<std::vector<Action>> bfs_to_energy(const Grid& grid, Position from, ActionSet set, Pcg32& rng) {
  struct Parent {
    int from = -1;
    Action via = Action::InvalidToken;
  };
  std::array<bool, kGridCells> visited{};
  std::array<Parent, kGridCells> parent{};
  std::queue<Position> frontier;

  frontier.push(from);
  visited[static_cast<std::size_t>(cell_index(from))] = true;

  const auto choices = moves(set);
  std::vector<Action> order(choices.begin(), choices.end());

  while (!frontier.empty()) {
    const Position current = frontier.front();
    frontier.pop();
    if (grid.at(current).energy >= 1) {
      std::vector<Action> path;
      for (int idx = cell_index(current); idx != cell_index(from);) {
        const Parent& p = parent[static_cast<std::size_t>(idx)];
        path.push_back(p.via);
        idx = p.from;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    std::copy(choices.begin(), choices.end(), order.begin());
    rng.shuffle(std::span<Action>(order));
    for (Action a : order) {
      const Position next = step(current, a);
      if (!in_bounds(next) || grid.at(next).obstacle) continue;
      auto& seen = visited[static_cast<std::size_t>(cell_index(next))];
      if (seen) continue;
      seen = true;
      parent[static_cast<std::size_t>(cell_index(next))] = {cell_index(current), a};
      frontier.push(next);
    }
  }
  return std::nullopt;
}

struct GreedyDecision {
  enum class Kind { GoTake, Retreat };
  Kind kind = Kind::Retreat;
  std::vector<Action> path;  // GoTake only
};

/// Steps needed to walk `path`, TAKE, retrace every movement so far, and DROP.
constexpr int greedy_round_trip_cost(int path_length, int past_moves) noexcept {
  return path_length + 1 + (past_moves + path_length) + 1;
}

/// One greedy decision: head for the nearest energy if the round trip still
/// fits in the remaining budget, otherwise retreat. `belief` is the agent's
/// own map of the grid, which may differ from the simulator's.
inline GreedyDecision greedy_plan_step(const Grid& belief, Position agent, int remaining, ActionSet set, Pcg32& rng,
                                       std::span<const Action> past_moves) {
  auto path = bfs_to_energy(belief, agent, set, rng);
  if (!path) return {};
  const int cost = greedy_round_trip_cost(static_cast<int>(path->size()), static_cast<int>(past_moves.size()));
  if (cost > remaining) return {};
  return {GreedyDecision::Kind::GoTake, std::move(*path)};
}

inline GreedyDecision greedy_plan_step(const Episode& state, ActionSet set, Pcg32& rng,
                                       std::span<const Action> past_moves) {
  return greedy_plan_step(state.grid(), state.agent(), state.remaining(), set, rng, past_moves);
}

/// Runs greedy search to completion. The agent knows the layout and its
/// movement set only: it plans on its own copy of the grid, marking a cell
/// empty once it has issued TAKE there. Carry limit and step cost are
/// enforced by the simulator but never anticipated, so a TAKE refused by the
/// carry limit does not stall the agent on that cell.
inline EpisodeResult greedy_run(const Grid& grid, const ConstraintSet& constraints, Pcg32& rng) {
  Episode episode(grid, constraints);
  Grid belief = grid;
  std::vector<Action> past;
  while (!episode.done()) {
    auto decision =
        greedy_plan_step(belief, episode.agent(), episode.remaining(), constraints.action_set, rng, past);
    if (decision.kind == GreedyDecision::Kind::Retreat) {
      for (auto it = past.rbegin(); it != past.rend(); ++it) episode.apply(complement(*it));
      episode.apply(Action::Drop);
      break;
    }
    for (Action a : decision.path) {
      episode.apply(a);
      past.push_back(a);
    }
    episode.apply(Action::Take);
    belief.at(episode.agent()).energy = 0;
  }
  return episode.result();
}

struct BaselineOptions {
  RandomWalkOptions random_walk;
};

/// Uniform driver over the two baselines. The episode is a pure function of
/// the arguments.
inline EpisodeResult run_baseline(const AgentSpec& agent, const Grid& grid, const ConstraintSet& constraints,
                                  std::uint64_t seed, const BaselineOptions& options = {}) {
  Pcg32 rng(seed);
  switch (agent.kind) {
    case AgentKind::RandomWalk: {
      const auto plan = random_walk_plan(constraints.action_set, rng, options.random_walk, grid.start());
      return run_episode(grid, constraints, plan);
    }
    case AgentKind::GreedySearch:
      return greedy_run(grid, constraints, rng);
    case AgentKind::Llm:
      break;
  }
  throw std::invalid_argument("not a baseline agent: " + agent.name());
}

}  // namespace grasp

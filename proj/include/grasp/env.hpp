#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasp/action.hpp"
#include "grasp/grid.hpp"

namespace grasp {

inline constexpr int kMaxSteps = 20;
inline constexpr int kCarryLimit = 2;
inline constexpr int kStepCostTenths = 3;

/// Agent-side half of a benchmark instance. Step cost is kept in tenths of an
/// energy unit so score arithmetic is exact.
struct ConstraintSet {
  ActionSet action_set = ActionSet::Mu1;
  std::optional<int> carry_limit;
  int step_cost_tenths = 0;
  int max_steps = kMaxSteps;

  double step_cost() const noexcept { return step_cost_tenths / 10.0; }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

/// The eight benchmark combinations in (action set, carry limit, cost) order.
inline std::vector<ConstraintSet> all_constraint_sets() {
  std::vector<ConstraintSet> out;
  for (auto set : {ActionSet::Mu1, ActionSet::Mu2})
    for (std::optional<int> limit : {std::optional<int>{}, std::optional<int>{kCarryLimit}})
      for (int cost : {0, kStepCostTenths}) out.push_back({set, limit, cost, kMaxSteps});
  return out;
}

enum class Effect { Applied, Noop };

inline std::string_view to_string(Effect e) { return e == Effect::Applied ? "applied" : "noop"; }

struct TraceEntry {
  Action action;
  Effect effect;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct EpisodeResult {
  int length = 0;
  int energy_at_start = 0;
  int score_tenths = 0;
  Position final_pos;
  std::vector<TraceEntry> trace;

  double score() const noexcept { return score_tenths / 10.0; }

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

class StepBudgetExhausted : public std::logic_error {
 public:
  StepBudgetExhausted() : std::logic_error("episode step budget exhausted") {}
};

/// Mutable simulation state for one episode. Drives both batch plans and
/// agents that interleave planning with execution.
class Episode {
 public:
  Episode(Grid grid, ConstraintSet constraints)
      : grid_(std::move(grid)),
        constraints_(constraints),
        agent_(grid_.start()),
        initial_energy_(grid_.total_energy()) {}

  /// Applies one action. Every call consumes a step, including no-ops.
  /// Throws StepBudgetExhausted once max_steps actions have been executed.
  Effect apply(Action action) {
    if (steps_ >= constraints_.max_steps) throw StepBudgetExhausted();
    const Effect effect = resolve(action);
    ++steps_;
    trace_.push_back({action, effect});
    return effect;
  }

  int remaining() const noexcept { return constraints_.max_steps - steps_; }
  bool done() const noexcept { return remaining() <= 0; }
  int steps_executed() const noexcept { return steps_; }
  int carried() const noexcept { return carried_; }
  Position agent() const noexcept { return agent_; }
  const Grid& grid() const noexcept { return grid_; }
  const ConstraintSet& constraints() const noexcept { return constraints_; }
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }
  int initial_energy() const noexcept { return initial_energy_; }

  /// True when `a` would move the agent from its current cell.
  bool can_move(Action a) const {
    if (!is_movement(a) || !allowed(constraints_.action_set, a)) return false;
    const Position target = step(agent_, a);
    return in_bounds(target) && !grid_.at(target).obstacle;
  }

  EpisodeResult result() const {
    EpisodeResult r;
    r.length = steps_;
    r.energy_at_start = grid_.at(grid_.start()).energy;
    r.score_tenths = 10 * r.energy_at_start - constraints_.step_cost_tenths * steps_;
    r.final_pos = agent_;
    r.trace = trace_;
    return r;
  }

 private:
  Effect resolve(Action action) {
    if (is_movement(action)) {
      if (!can_move(action)) return Effect::Noop;
      agent_ = step(agent_, action);
      return Effect::Applied;
    }
    Cell& here = grid_.at(agent_);
    switch (action) {
      case Action::Take:
        if (here.energy < 1) return Effect::Noop;
        if (constraints_.carry_limit && carried_ >= *constraints_.carry_limit) return Effect::Noop;
        --here.energy;
        ++carried_;
        return Effect::Applied;
      case Action::Drop:
        if (carried_ == 0) return Effect::Noop;
        here.energy += carried_;
        carried_ = 0;
        return Effect::Applied;
      default:
        return Effect::Noop;
    }
  }

  Grid grid_;
  ConstraintSet constraints_;
  Position agent_;
  int carried_ = 0;
  int steps_ = 0;
  int initial_energy_ = 0;
  std::vector<TraceEntry> trace_;
};

/// Executes the first min(|plan|, max_steps) actions; the rest are ignored.
inline EpisodeResult run_episode(const Grid& grid, const ConstraintSet& constraints, std::span<const Action> plan) {
  Episode episode(grid, constraints);
  const auto n = std::min<std::size_t>(plan.size(), static_cast<std::size_t>(constraints.max_steps));
  for (std::size_t i = 0; i < n; ++i) episode.apply(plan[i]);
  return episode.result();
}

}  // namespace grasp

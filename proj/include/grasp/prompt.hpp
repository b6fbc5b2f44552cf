#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grasp/action.hpp"
#include "grasp/env.hpp"
#include "grasp/grid.hpp"
#include "grasp/text_render.hpp"

namespace grasp {

/// Messages for one chat completion. Temperature is always zero.
struct PromptBundle {
  std::string system;
  std::string user;
  std::string model;
  double temperature = 0.0;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// Template text is reproduced byte-for-byte, including its irregular
// spacing ("DROP.{cost}" has no space before the fragment).
namespace prompt_text {

inline constexpr std::string_view kSystemHead =
    "You are an agent in a grid world. The grid world consists of cells. Each cell may have one unit of energy or "
    "no energy at all.";
inline constexpr std::string_view kSystemGoal =
    " The goal for you is to collect as much energy as possible and put the collected energy back in the cell where "
    "you started. You have 20 steps.";
inline constexpr std::string_view kSystemTake =
    " You can collect energy from a cell by being in the cell and TAKE the energy from the cell. If there is no "
    "energy in the cell, you cannot take any energy from it.";
inline constexpr std::string_view kSystemBoundary =
    " You can not move across the boundary of the grid world. You can drop all your energy by DROP.";
inline constexpr std::string_view kSystemTail =
    " You can use less than 20 steps. Any invalid step will not cause any change in the grid world.";

inline constexpr std::string_view kObstacle = " Some cells are blocked by obstacles. You cannot move to or through these cells.";
inline constexpr std::string_view kMovementMu1 =
    " For each step, you can choose UP, DOWN, LEFT, RIGHT, TAKE, and DROP. UP allows you to move one cell up in one "
    "step. The other movements are similar.";
inline constexpr std::string_view kMovementMu2 =
    " For each step, you can choose UP, DOWN, LEFT, RIGHT, UPLEFT, UPRIGHT, DOWNLEFT, DOWNRIGHT, TAKE, and DROP. "
    "UPLEFT allows you to move diagonally one cell up and left in one step. The other movements are similar.";
inline constexpr std::string_view kEnergyLimit = " You can only carry two unit of energy at a time.";
inline constexpr std::string_view kStepCost = "Each step costs you 0.3 unit of energy.";

inline constexpr std::string_view kUserHead =
    "You are given the following as the representation of the grid world, where A is you, E is energy";
inline constexpr std::string_view kUserObstacle = ", O is an obstacle";
inline constexpr std::string_view kUserTail = "Give your sequence of steps as a list. For example: [STEP, STEP, ...]";

}  // namespace prompt_text

inline std::string build_system_prompt(bool has_obstacles, const ConstraintSet& constraints) {
  using namespace prompt_text;
  std::string s;
  s += kSystemHead;
  if (has_obstacles) s += kObstacle;
  s += kSystemGoal;
  s += constraints.action_set == ActionSet::Mu1 ? kMovementMu1 : kMovementMu2;
  s += kSystemTake;
  if (constraints.carry_limit) s += kEnergyLimit;
  s += kSystemBoundary;
  if (constraints.step_cost_tenths != 0) s += kStepCost;
  s += kSystemTail;
  return s;
}

inline std::string build_user_prompt(const Grid& grid, bool has_obstacles) {
  using namespace prompt_text;
  std::string s;
  s += kUserHead;
  if (has_obstacles) s += kUserObstacle;
  s += ":\n";
  s += render(grid);
  s += kUserTail;
  return s;
}

/// Whether a grid counts as "has obstacles" for prompting: the generation
/// flag when known, otherwise any obstacle cell present.
inline bool prompt_has_obstacles(const Grid& grid) {
  return grid.spec.has_obstacles || grid.obstacle_count() > 0;
}

inline PromptBundle build_prompt(const Grid& grid, const ConstraintSet& constraints, std::string model = {}) {
  const bool obstacles = prompt_has_obstacles(grid);
  return {build_system_prompt(obstacles, constraints), build_user_prompt(grid, obstacles), std::move(model), 0.0};
}

/// A parsed model response.
struct ActionPlan {
  struct Note {
    std::string token;
    std::string resolution;

    friend bool operator==(const Note&, const Note&) = default;
  };

  std::vector<Action> actions;
  std::string raw_response;
  std::vector<Note> notes;

  bool has_note(std::string_view resolution) const {
    return std::any_of(notes.begin(), notes.end(), [&](const Note& n) { return n.resolution == resolution; });
  }
};

namespace detail {

inline std::string_view trim_token(std::string_view s) {
  auto junk = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\'' || c == '`' || c == '.';
  };
  while (!s.empty() && junk(s.front())) s.remove_prefix(1);
  while (!s.empty() && junk(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

/// Extracts the last bracketed list from a model response. Never throws:
/// tokens that are not one of the ten action names become InvalidToken and
/// are noted as "unresolved"; a response without any list yields an empty
/// plan noted "no-list". Empty slots (e.g. a trailing comma) are skipped and
/// noted "empty".
inline ActionPlan parse_plan(std::string_view raw) {
  ActionPlan plan;
  plan.raw_response = std::string(raw);

  // Last '[' ... ']' pair with no brackets inside.
  std::size_t open = std::string_view::npos;
  std::size_t close = std::string_view::npos;
  for (std::size_t i = raw.size(); i-- > 0;) {
    if (raw[i] == ']') {
      close = i;
      open = std::string_view::npos;
    } else if (raw[i] == '[' && close != std::string_view::npos) {
      open = i;
      break;
    }
  }
  if (open == std::string_view::npos || close == std::string_view::npos) {
    plan.notes.push_back({"", "no-list"});
    return plan;
  }

  const std::string_view body = raw.substr(open + 1, close - open - 1);
  if (detail::trim_token(body).empty()) return plan;

  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const std::string_view token = detail::trim_token(body.substr(pos, comma - pos));
    pos = comma + 1;
    if (token.empty()) {
      plan.notes.push_back({"", "empty"});
      continue;
    }
    if (auto action = action_from_string(detail::upper(token)); action && *action != Action::InvalidToken) {
      plan.actions.push_back(*action);
    } else {
      plan.actions.push_back(Action::InvalidToken);
      plan.notes.push_back({std::string(token), "unresolved"});
    }
  }
  return plan;
}

}  // namespace grasp

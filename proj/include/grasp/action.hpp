#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "grasp/grid.hpp"

namespace grasp {

enum class Action {
  Up,
  Down,
  Left,
  Right,
  UpLeft,
  UpRight,
  DownLeft,
  DownRight,
  Take,
  Drop,
  InvalidToken,
};

inline constexpr std::array<Action, 10> kNamedActions = {
    Action::Up,       Action::Down,      Action::Left, Action::Right, Action::UpLeft,
    Action::UpRight,  Action::DownLeft,  Action::DownRight, Action::Take, Action::Drop};

enum class ActionSet { Mu1, Mu2 };

inline constexpr std::array<Action, 4> kMu1Moves = {Action::Up, Action::Down, Action::Left, Action::Right};
inline constexpr std::array<Action, 8> kMu2Moves = {Action::Up,     Action::Down,    Action::Left,
                                                    Action::Right,  Action::UpLeft,  Action::UpRight,
                                                    Action::DownLeft, Action::DownRight};

inline std::span<const Action> moves(ActionSet set) noexcept {
  if (set == ActionSet::Mu1) return kMu1Moves;
  return kMu2Moves;
}

constexpr bool is_movement(Action a) noexcept {
  return a != Action::Take && a != Action::Drop && a != Action::InvalidToken;
}

constexpr bool is_diagonal(Action a) noexcept {
  return a == Action::UpLeft || a == Action::UpRight || a == Action::DownLeft || a == Action::DownRight;
}

constexpr bool allowed(ActionSet set, Action a) noexcept {
  if (!is_movement(a)) return a != Action::InvalidToken;
  return set == ActionSet::Mu2 || !is_diagonal(a);
}

/// (row, col) offset; zero for non-movement actions.
constexpr Position delta(Action a) noexcept {
  switch (a) {
    case Action::Up: return {-1, 0};
    case Action::Down: return {1, 0};
    case Action::Left: return {0, -1};
    case Action::Right: return {0, 1};
    case Action::UpLeft: return {-1, -1};
    case Action::UpRight: return {-1, 1};
    case Action::DownLeft: return {1, -1};
    case Action::DownRight: return {1, 1};
    default: return {0, 0};
  }
}

constexpr Position step(Position p, Action a) noexcept {
  const Position d = delta(a);
  return {p.row + d.row, p.col + d.col};
}

/// The movement that exactly reverses `a`. Non-movement actions map to themselves.
constexpr Action complement(Action a) noexcept {
  switch (a) {
    case Action::Up: return Action::Down;
    case Action::Down: return Action::Up;
    case Action::Left: return Action::Right;
    case Action::Right: return Action::Left;
    case Action::UpLeft: return Action::DownRight;
    case Action::DownRight: return Action::UpLeft;
    case Action::UpRight: return Action::DownLeft;
    case Action::DownLeft: return Action::UpRight;
    default: return a;
  }
}

inline std::string_view to_string(Action a) {
  switch (a) {
    case Action::Up: return "UP";
    case Action::Down: return "DOWN";
    case Action::Left: return "LEFT";
    case Action::Right: return "RIGHT";
    case Action::UpLeft: return "UPLEFT";
    case Action::UpRight: return "UPRIGHT";
    case Action::DownLeft: return "DOWNLEFT";
    case Action::DownRight: return "DOWNRIGHT";
    case Action::Take: return "TAKE";
    case Action::Drop: return "DROP";
    case Action::InvalidToken: return "INVALID_TOKEN";
  }
  return "INVALID_TOKEN";
}

/// Exact, upper-case names only. See parse_plan for lenient matching.
inline std::optional<Action> action_from_string(std::string_view s) {
  for (auto a : kNamedActions)
    if (to_string(a) == s) return a;
  if (s == "INVALID_TOKEN") return Action::InvalidToken;
  return std::nullopt;
}

inline std::string_view to_string(ActionSet s) { return s == ActionSet::Mu1 ? "mu1" : "mu2"; }

}  // namespace grasp

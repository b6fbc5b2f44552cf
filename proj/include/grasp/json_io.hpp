#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "grasp/env.hpp"
#include "grasp/grid.hpp"
#include "grasp/text_render.hpp"

namespace grasp {

using nlohmann::json;

inline json params_to_json(DistributionKind kind, const DistributionParams& p) {
  switch (kind) {
    case DistributionKind::Random: return {{"p", p.p}};
    case DistributionKind::VerticalSkew: return {{"p_top", p.p_top}};
    case DistributionKind::HorizontalSkew: return {{"p_left", p.p_left}};
    case DistributionKind::Cluster: {
      json centers = json::array();
      for (auto c : p.cluster_centers) centers.push_back({c.row, c.col});
      return {{"n_clusters", p.n_clusters()}, {"centers", centers}};
    }
    case DistributionKind::Spiral: return {{"noise_seed", p.spiral_noise_seed}};
  }
  return json::object();
}

inline DistributionParams params_from_json(DistributionKind kind, const json& j) {
  DistributionParams p;
  switch (kind) {
    case DistributionKind::Random: p.p = j.at("p").get<double>(); break;
    case DistributionKind::VerticalSkew: p.p_top = j.at("p_top").get<double>(); break;
    case DistributionKind::HorizontalSkew: p.p_left = j.at("p_left").get<double>(); break;
    case DistributionKind::Cluster:
      for (const auto& c : j.at("centers")) p.cluster_centers.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      break;
    case DistributionKind::Spiral: p.spiral_noise_seed = j.at("noise_seed").get<std::uint64_t>(); break;
  }
  return p;
}

inline json grid_to_json(const Grid& grid) {
  const GridSpec& s = grid.spec;
  json cells = json::array();
  for (int r = 0; r < kGridSide; ++r) {
    json row = json::array();
    for (int c = 0; c < kGridSide; ++c) row.push_back(std::string(1, cell_symbol(grid.at(r, c))));
    cells.push_back(std::move(row));
  }
  return {{"id", s.id()},
          {"distribution", std::string(to_string(s.distribution))},
          {"params", params_to_json(s.distribution, s.params)},
          {"has_obstacles", s.has_obstacles},
          {"start_mode", std::string(to_string(s.start_mode))},
          {"grid_index", s.grid_index},
          {"seed", s.seed},
          {"start", {grid.start().row, grid.start().col}},
          {"cells", std::move(cells)}};
}

inline Grid grid_from_json(const json& j) {
  Grid grid;
  const auto& cells = j.at("cells");
  if (!cells.is_array() || cells.size() != kGridSide) throw std::runtime_error("grid json: expected 11 rows");
  int starts = 0;
  for (int r = 0; r < kGridSide; ++r) {
    const auto& row = cells.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != kGridSide)
      throw std::runtime_error("grid json: row " + std::to_string(r) + " does not have 11 cells");
    for (int c = 0; c < kGridSide; ++c) {
      const auto sym = row.at(static_cast<std::size_t>(c)).get<std::string>();
      Cell& cell = grid.at(r, c);
      cell = Cell{};
      if (sym == "E") cell.energy = 1;
      else if (sym == "O") cell.obstacle = true;
      else if (sym == "A") ++starts;
      else if (sym != " ") throw std::runtime_error("grid json: unknown cell symbol '" + sym + "'");
    }
  }
  const Position start{j.at("start").at(0).get<int>(), j.at("start").at(1).get<int>()};
  if (starts != 1 || !in_bounds(start) ||
      cells.at(static_cast<std::size_t>(start.row)).at(static_cast<std::size_t>(start.col)) != "A")
    throw std::runtime_error("grid json: start marker does not match \"start\"");
  grid.set_start(start);

  GridSpec& s = grid.spec;
  s.distribution = distribution_from_string(j.at("distribution").get<std::string>());
  s.params = params_from_json(s.distribution, j.at("params"));
  s.has_obstacles = j.at("has_obstacles").get<bool>();
  s.start_mode = start_mode_from_string(j.at("start_mode").get<std::string>());
  s.grid_index = j.at("grid_index").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return grid;
}

inline json constraints_to_json(const ConstraintSet& c) {
  return {{"action_set", std::string(to_string(c.action_set))},
          {"carry_limit", c.carry_limit ? json(*c.carry_limit) : json(nullptr)},
          {"step_cost", c.step_cost()},
          {"max_steps", c.max_steps}};
}

inline ConstraintSet constraints_from_json(const json& j) {
  ConstraintSet c;
  const auto set = j.at("action_set").get<std::string>();
  if (set == "mu1") c.action_set = ActionSet::Mu1;
  else if (set == "mu2") c.action_set = ActionSet::Mu2;
  else throw std::runtime_error("unknown action set: " + set);
  if (!j.at("carry_limit").is_null()) c.carry_limit = j.at("carry_limit").get<int>();
  c.step_cost_tenths = static_cast<int>(std::lround(j.at("step_cost").get<double>() * 10.0));
  c.max_steps = j.value("max_steps", kMaxSteps);
  return c;
}

}  // namespace grasp

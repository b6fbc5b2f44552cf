#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grasp/eval.hpp"

namespace grasp {

/// Integer sums, so the fold is independent of record order.
struct MetricSums {
  std::int64_t n = 0;
  std::int64_t length = 0;
  std::int64_t score_tenths = 0;
  std::int64_t score_tenths_sq = 0;

  void add(const RunRecord& r) {
    ++n;
    length += r.length;
    score_tenths += r.score_tenths;
    score_tenths_sq += static_cast<std::int64_t>(r.score_tenths) * r.score_tenths;
  }

  double mean_length() const { return n ? static_cast<double>(length) / static_cast<double>(n) : 0.0; }
  double mean_energy() const { return n ? static_cast<double>(score_tenths) / (10.0 * static_cast<double>(n)) : 0.0; }
  double stderr_energy() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double mean = static_cast<double>(score_tenths) / nn;
    const double var = (static_cast<double>(score_tenths_sq) - nn * mean * mean) / (nn - 1.0);
    return std::sqrt(std::max(0.0, var) / nn) / 10.0;
  }
};

enum class Mark { None, Max, Min };

struct AggregateCell {
  MetricSums sums;
  Mark mark = Mark::None;
};

struct AggregateRow {
  std::string control;
  std::string value;
  std::map<std::string, AggregateCell> by_agent;
};

struct AggregateTable {
  std::vector<std::string> agents;  // column order
  std::vector<AggregateRow> rows;
  std::map<std::string, int> unscored;  // excluded records per agent

  const AggregateRow* find(std::string_view control, std::string_view value) const {
    for (const auto& row : rows)
      if (row.control == control && row.value == value) return &row;
    return nullptr;
  }
};

struct ControlDef {
  std::string name;
  std::vector<std::string> values;
  std::function<std::string(const InstanceId&)> classify;
};

inline std::string distribution_label(DistributionKind k) {
  switch (k) {
    case DistributionKind::Random: return "Random";
    case DistributionKind::VerticalSkew: return "Vertically-skewed";
    case DistributionKind::HorizontalSkew: return "Horizontally-skewed";
    case DistributionKind::Cluster: return "Cluster";
    case DistributionKind::Spiral: return "Spiral";
  }
  return "?";
}

/// The six controls in table order, followed implicitly by "Average".
inline const std::vector<ControlDef>& report_controls() {
  static const std::vector<ControlDef> controls = {
      {"Energy Distribution",
       {"Random", "Vertically-skewed", "Horizontally-skewed", "Cluster", "Spiral"},
       [](const InstanceId& id) { return distribution_label(id.distribution); }},
      {"Obstacle", {"Yes", "No"}, [](const InstanceId& id) { return std::string(id.has_obstacles ? "Yes" : "No"); }},
      {"Starting Position",
       {"Inner Position", "Outer Position"},
       [](const InstanceId& id) {
         return std::string(id.start_mode == StartMode::Inner ? "Inner Position" : "Outer Position");
       }},
      {"Movement-related Action Set",
       {"mu1", "mu2"},
       [](const InstanceId& id) { return std::string(to_string(id.constraints.action_set)); }},
      {"Energy Carrying Limit",
       {"No Limit", "2 Units"},
       [](const InstanceId& id) { return std::string(id.constraints.carry_limit ? "2 Units" : "No Limit"); }},
      {"Energy Cost Per Step",
       {"0 Unit", "0.3 Unit"},
       [](const InstanceId& id) { return std::string(id.constraints.step_cost_tenths ? "0.3 Unit" : "0 Unit"); }},
  };
  return controls;
}

inline constexpr std::string_view kAverageRow = "Average";

/// Per-control mean length and energy for every agent present. Unscored
/// records are excluded and counted. `only_control` restricts the output to
/// one control (plus the Average row).
inline AggregateTable aggregate(const std::vector<RunRecord>& records,
                                const std::optional<std::string>& only_control = std::nullopt) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");
  AggregateTable table;
  for (const auto& r : records)
    if (std::find(table.agents.begin(), table.agents.end(), r.agent) == table.agents.end())
      table.agents.push_back(r.agent);
  std::sort(table.agents.begin(), table.agents.end());

  bool matched = !only_control;
  for (const auto& control : report_controls()) {
    if (only_control && *only_control != control.name) continue;
    matched = true;
    for (const auto& v : control.values) table.rows.push_back({control.name, v, {}});
  }
  if (!matched) throw std::invalid_argument("unknown control: " + *only_control);
  table.rows.push_back({std::string(kAverageRow), std::string(kAverageRow), {}});

  std::map<std::pair<std::string, std::string>, AggregateRow*> index;
  for (auto& row : table.rows) index[{row.control, row.value}] = &row;

  for (const auto& r : records) {
    if (!r.scored) {
      ++table.unscored[r.agent];
      continue;
    }
    const InstanceId id = parse_instance_id(r.instance_id);
    for (const auto& control : report_controls()) {
      const auto it = index.find({control.name, control.classify(id)});
      if (it != index.end()) it->second->by_agent[r.agent].sums.add(r);
    }
    index[{std::string(kAverageRow), std::string(kAverageRow)}]->by_agent[r.agent].sums.add(r);
  }

  if (table.agents.size() >= 2) {
    for (auto& row : table.rows) {
      AggregateCell* best = nullptr;
      AggregateCell* worst = nullptr;
      for (auto& [agent, cell] : row.by_agent) {
        if (cell.sums.n == 0) continue;
        // Compare exact rationals score/n via cross-multiplication.
        auto less = [](const AggregateCell* a, const AggregateCell* b) {
          return a->sums.score_tenths * b->sums.n < b->sums.score_tenths * a->sums.n;
        };
        if (!best || less(best, &cell)) best = &cell;
        if (!worst || less(&cell, worst)) worst = &cell;
      }
      if (best && worst && best != worst) {
        best->mark = Mark::Max;
        worst->mark = Mark::Min;
      }
    }
  }
  return table;
}

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string_view to_string(Mark m) {
  switch (m) {
    case Mark::Max: return "max";
    case Mark::Min: return "min";
    case Mark::None: break;
  }
  return "";
}

inline std::string aggregate_csv(const AggregateTable& t) {
  std::string out = "control,value,agent,n,mean_length,mean_energy,stderr_energy,mark\n";
  for (const auto& row : t.rows)
    for (const auto& agent : t.agents) {
      const auto it = row.by_agent.find(agent);
      if (it == row.by_agent.end()) continue;
      const auto& c = it->second;
      out += row.control + "," + row.value + "," + agent + "," + std::to_string(c.sums.n) + "," +
             fixed2(c.sums.mean_length()) + "," + fixed2(c.sums.mean_energy()) + "," +
             fixed2(c.sums.stderr_energy()) + "," + std::string(to_string(c.mark)) + "\n";
    }
  return out;
}

/// Aligned plain-text table, one Length/Energy column pair per agent.
/// '^' marks the row maximum energy and 'v' the minimum.
inline std::string aggregate_text(const AggregateTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"Control", "Value"};
  for (const auto& a : t.agents) {
    header.push_back(a + " Length");
    header.push_back(a + " Energy");
  }
  cells.push_back(header);
  std::string last_control;
  for (const auto& row : t.rows) {
    std::vector<std::string> line = {row.control == last_control ? "" : row.control,
                                     row.control == kAverageRow ? "" : row.value};
    last_control = row.control;
    for (const auto& a : t.agents) {
      const auto it = row.by_agent.find(a);
      if (it == row.by_agent.end() || it->second.sums.n == 0) {
        line.push_back("-");
        line.push_back("-");
        continue;
      }
      const auto& c = it->second;
      line.push_back(fixed2(c.sums.mean_length()));
      std::string e = fixed2(c.sums.mean_energy());
      if (c.mark == Mark::Max) e += " ^";
      if (c.mark == Mark::Min) e += " v";
      line.push_back(e);
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

  std::string out;
  for (std::size_t li = 0; li < cells.size(); ++li) {
    const auto& line = cells[li];
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) s += "  ";
      const auto pad = std::string(width[i] - line[i].size(), ' ');
      s += i < 2 ? line[i] + pad : pad + line[i];
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out += s + "\n";
    if (li == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    }
  }
  for (const auto& [agent, n] : t.unscored) out += "unscored (excluded) " + agent + ": " + std::to_string(n) + "\n";
  return out;
}

}  // namespace grasp

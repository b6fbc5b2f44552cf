#pragma once

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grasp/agents.hpp"
#include "grasp/benchmark_io.hpp"
#include "grasp/env.hpp"
#include "grasp/json_io.hpp"
#include "grasp/llm_client.hpp"
#include "grasp/prompt.hpp"

namespace grasp {

/// One of the 16,000 benchmark instances: a grid plus a constraint combination.
struct InstanceId {
  DistributionKind distribution = DistributionKind::Random;
  bool has_obstacles = false;
  StartMode start_mode = StartMode::Inner;
  int grid_index = 0;
  ConstraintSet constraints;

  /// "dist=<d>/obs=<0|1>/start=<in|out>/g=<n>/mu=<1|2>/lim=<0|2>/cost=<0|0.3>"
  std::string str() const {
    std::string s = "dist=" + std::string(to_string(distribution)) + "/obs=" + (has_obstacles ? "1" : "0") +
                     "/start=" + (start_mode == StartMode::Inner ? "in" : "out") + "/g=" + std::to_string(grid_index);
    s += constraints.action_set == ActionSet::Mu1 ? "/mu=1" : "/mu=2";
    s += "/lim=" + std::to_string(constraints.carry_limit.value_or(0));
    s += constraints.step_cost_tenths == 0 ? "/cost=0" : "/cost=0." + std::to_string(constraints.step_cost_tenths);
    return s;
  }

  std::string grid_id() const {
    GridSpec s;
    s.distribution = distribution;
    s.has_obstacles = has_obstacles;
    s.start_mode = start_mode;
    s.grid_index = grid_index;
    return s.id();
  }

  friend bool operator==(const InstanceId&, const InstanceId&) = default;
};

inline InstanceId parse_instance_id(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto slash = text.find('/', pos);
    if (slash == std::string_view::npos) slash = text.size();
    const auto part = text.substr(pos, slash - pos);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed instance id: " + std::string(text));
    kv[std::string(part.substr(0, eq))] = std::string(part.substr(eq + 1));
    pos = slash + 1;
  }
  auto field = [&](const char* name) -> const std::string& {
    const auto it = kv.find(name);
    if (it == kv.end()) throw std::invalid_argument("instance id lacks " + std::string(name) + ": " + std::string(text));
    return it->second;
  };
  InstanceId id;
  id.distribution = distribution_from_string(field("dist"));
  id.has_obstacles = field("obs") == "1";
  id.start_mode = start_mode_from_string(field("start"));
  id.grid_index = std::stoi(field("g"));
  id.constraints.action_set = field("mu") == "2" ? ActionSet::Mu2 : ActionSet::Mu1;
  if (const int lim = std::stoi(field("lim")); lim > 0) id.constraints.carry_limit = lim;
  id.constraints.step_cost_tenths = static_cast<int>(std::lround(std::stod(field("cost")) * 10.0));
  if (id.constraints.step_cost_tenths != 0 && id.constraints.step_cost_tenths != 3)
    throw std::invalid_argument("unknown step cost in instance id: " + std::string(text));
  if (id.str() != text) throw std::invalid_argument("non-canonical instance id: " + std::string(text));
  return id;
}

/// Inclusive range of grid indices.
struct IndexRange {
  int first = 0;
  int last = kDefaultInstancesPerCombo - 1;

  int size() const noexcept { return last - first + 1; }
};

/// Parses "A..B" (inclusive) or a single index "A".
inline IndexRange parse_index_range(std::string_view text) {
  IndexRange r;
  try {
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
      r.first = r.last = std::stoi(std::string(text));
    } else {
      r.first = std::stoi(std::string(text.substr(0, dots)));
      r.last = std::stoi(std::string(text.substr(dots + 2)));
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed index range: " + std::string(text));
  }
  if (r.first < 0 || r.first > r.last) throw std::invalid_argument("empty index range: " + std::string(text));
  return r;
}

/// Cartesian product of every control with the index range. Order:
/// distribution, obstacles (yes, no), start (inner, outer), index, then the
/// eight constraint combinations.
inline std::vector<InstanceId> enumerate_instances(IndexRange range, int max_index = kDefaultInstancesPerCombo - 1) {
  if (range.first < 0 || range.last > max_index || range.first > range.last)
    throw std::invalid_argument("grid index range " + std::to_string(range.first) + ".." + std::to_string(range.last) +
                                " is empty or outside 0.." + std::to_string(max_index));
  std::vector<InstanceId> out;
  const auto constraint_sets = all_constraint_sets();
  out.reserve(static_cast<std::size_t>(20 * range.size()) * constraint_sets.size());
  for (auto kind : kAllDistributions)
    for (bool obs : {true, false})
      for (auto mode : kAllStartModes)
        for (int g = range.first; g <= range.last; ++g)
          for (const auto& c : constraint_sets) out.push_back({kind, obs, mode, g, c});
  return out;
}

/// Per-record agent seed. The step-cost control is deliberately left out so
/// that the two cost arms of an instance replay the same agent randomness.
inline std::uint64_t record_seed(std::uint64_t master_seed, const InstanceId& id, int replicate) {
  return mix_seed(master_seed, fnv1a64(id.grid_id()), static_cast<std::uint64_t>(id.constraints.action_set),
                  static_cast<std::uint64_t>(id.constraints.carry_limit.value_or(0)),
                  static_cast<std::uint64_t>(replicate));
}

struct RunRecord {
  std::string instance_id;
  std::string agent;
  int replicate = 0;
  std::uint64_t seed = 0;
  bool scored = true;
  std::string error;  // unscored only
  int length = 0;
  int score_tenths = 0;
  int energy_at_start = 0;
  Position final_pos;
  std::vector<TraceEntry> trace;
  std::vector<ActionPlan::Note> parse_notes;
  std::string raw_response;
  std::string started_at;
  std::string finished_at;

  double score() const noexcept { return score_tenths / 10.0; }
  std::string key() const { return instance_id + "|" + agent + "|" + std::to_string(replicate); }
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json record_to_json(const RunRecord& r) {
  const InstanceId id = parse_instance_id(r.instance_id);
  nlohmann::json actions = nlohmann::json::array();
  nlohmann::json effects = nlohmann::json::array();
  for (const auto& e : r.trace) {
    actions.push_back(std::string(to_string(e.action)));
    effects.push_back(std::string(to_string(e.effect)));
  }
  nlohmann::json j{{"instance_id", r.instance_id},
                   {"agent", r.agent},
                   {"replicate", r.replicate},
                   {"seed", r.seed},
                   {"status", r.scored ? "scored" : "unscored"},
                   {"constraints", constraints_to_json(id.constraints)},
                   {"actions", std::move(actions)},
                   {"effects", std::move(effects)},
                   {"length", r.length},
                   {"score", r.score()},
                   {"energy_at_start", r.energy_at_start},
                   {"final_pos", {r.final_pos.row, r.final_pos.col}},
                   {"started_at", r.started_at},
                   {"finished_at", r.finished_at}};
  if (!r.scored) j["error"] = r.error;
  if (!r.raw_response.empty()) j["raw_response"] = r.raw_response;
  if (!r.parse_notes.empty()) {
    nlohmann::json notes = nlohmann::json::array();
    for (const auto& n : r.parse_notes) notes.push_back({{"token", n.token}, {"resolution", n.resolution}});
    j["parse_notes"] = std::move(notes);
  }
  return j;
}

inline RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.agent = j.at("agent").get<std::string>();
  r.replicate = j.value("replicate", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.scored = j.value("status", std::string("scored")) == "scored";
  r.error = j.value("error", std::string{});
  r.length = j.at("length").get<int>();
  r.score_tenths = static_cast<int>(std::lround(j.at("score").get<double>() * 10.0));
  r.energy_at_start = j.at("energy_at_start").get<int>();
  r.final_pos = {j.at("final_pos").at(0).get<int>(), j.at("final_pos").at(1).get<int>()};
  const auto& actions = j.at("actions");
  const auto& effects = j.at("effects");
  if (actions.size() != effects.size()) throw std::runtime_error("record " + r.instance_id + ": actions/effects size mismatch");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto name = actions[i].get<std::string>();
    const auto action = action_from_string(name);
    if (!action) throw std::runtime_error("record " + r.instance_id + ": unknown action " + name);
    r.trace.push_back({*action, effects[i].get<std::string>() == "applied" ? Effect::Applied : Effect::Noop});
  }
  r.raw_response = j.value("raw_response", std::string{});
  if (j.contains("parse_notes"))
    for (const auto& n : j["parse_notes"])
      r.parse_notes.push_back({n.at("token").get<std::string>(), n.at("resolution").get<std::string>()});
  r.started_at = j.value("started_at", std::string{});
  r.finished_at = j.value("finished_at", std::string{});
  return r;
}

inline std::vector<RunRecord> load_records(const std::filesystem::path& path) {
  std::vector<RunRecord> out;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<Action> actions_of(const std::vector<TraceEntry>& trace) {
  std::vector<Action> out;
  out.reserve(trace.size());
  for (const auto& e : trace) out.push_back(e.action);
  return out;
}

/// Replays a record's actions on its grid; nullopt when the replay
/// reproduces the stored trace, length and score exactly.
inline std::optional<std::string> audit_record(const RunRecord& r, const Grid& grid) {
  if (!r.scored) return std::nullopt;
  const InstanceId id = parse_instance_id(r.instance_id);
  const auto replay = run_episode(grid, id.constraints, actions_of(r.trace));
  if (replay.trace != r.trace) return "trace effects differ on replay";
  if (replay.length != r.length) return "length differs on replay";
  if (replay.score_tenths != r.score_tenths) return "score differs on replay";
  if (replay.energy_at_start != r.energy_at_start) return "energy_at_start differs on replay";
  if (replay.final_pos != r.final_pos) return "final position differs on replay";
  return std::nullopt;
}

struct SuiteConfig {
  AgentSpec agent;
  IndexRange range;
  int replicates = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  BaselineOptions baseline;
  RetryPolicy retry;

  nlohmann::json to_json() const {
    return {{"agent", agent.name()},
            {"subset", std::to_string(range.first) + ".." + std::to_string(range.last)},
            {"replicates", replicates},
            {"seed", seed},
            {"workers", workers},
            {"resample_invalid", baseline.random_walk.resample_invalid},
            {"max_retries", retry.max_retries}};
  }
};

/// Runs one (instance, replicate). LLM failures yield an unscored record
/// instead of throwing.
inline RunRecord run_instance(const SuiteConfig& config, const InstanceId& id, int replicate, const Grid& grid,
                              ChatClient* client, const Sleeper& sleep = real_sleep) {
  RunRecord r;
  r.instance_id = id.str();
  r.agent = config.agent.name();
  r.replicate = replicate;
  r.seed = record_seed(config.seed, id, replicate);
  r.started_at = utc_timestamp();

  EpisodeResult result;
  if (config.agent.kind == AgentKind::Llm) {
    if (client == nullptr) throw std::invalid_argument("LLM agent requires a chat client");
    try {
      const auto text = query_model(*client, {r.instance_id, build_prompt(grid, id.constraints, config.agent.model)},
                                    config.retry, sleep);
      const ActionPlan plan = parse_plan(text);
      r.raw_response = text;
      r.parse_notes = plan.notes;
      result = run_episode(grid, id.constraints, plan.actions);
    } catch (const LlmError& e) {
      r.scored = false;
      r.error = e.what();
      r.finished_at = utc_timestamp();
      return r;
    }
  } else {
    result = run_baseline(config.agent, grid, id.constraints, r.seed, config.baseline);
  }
  r.length = result.length;
  r.score_tenths = result.score_tenths;
  r.energy_at_start = result.energy_at_start;
  r.final_pos = result.final_pos;
  r.trace = std::move(result.trace);
  r.finished_at = utc_timestamp();
  return r;
}

struct SuiteSummary {
  int written = 0;
  int skipped = 0;
  int unscored = 0;
};

/// Runs every (instance, replicate) of the subset that is not already in
/// `results_path`, appending records in enumeration order. Work is spread
/// over `config.workers` threads; a single writer commits records as soon as
/// all earlier ones are done, so an interrupted run can be resumed.
inline SuiteSummary run_suite(const SuiteConfig& config, GridStore& grids, const std::filesystem::path& results_path,
                              ChatClient* client = nullptr, const Sleeper& sleep = real_sleep) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  const auto instances = enumerate_instances(config.range);
  grids.preload(config.range.first, config.range.last);

  std::set<std::string> done;
  if (std::filesystem::exists(results_path))
    for (const auto& r : load_records(results_path)) done.insert(r.key());

  struct Task {
    const InstanceId* id;
    int replicate;
  };
  std::vector<Task> tasks;
  SuiteSummary summary;
  for (int rep = 0; rep < config.replicates; ++rep)
    for (const auto& id : instances) {
      const std::string key = id.str() + "|" + config.agent.name() + "|" + std::to_string(rep);
      if (done.count(key)) {
        ++summary.skipped;
        continue;
      }
      tasks.push_back({&id, rep});
    }

  if (results_path.has_parent_path()) std::filesystem::create_directories(results_path.parent_path());
  std::ofstream out(results_path, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + results_path.string());
  {
    std::ofstream meta(results_path.string() + ".meta.jsonl", std::ios::app);
    meta << nlohmann::json{{"config", config.to_json()},
                           {"grids", grids.source()},
                           {"pending", tasks.size()},
                           {"skipped", summary.skipped},
                           {"started_at", utc_timestamp()}}
                .dump()
         << '\n';
  }

  std::vector<std::optional<RunRecord>> slots(tasks.size());
  std::mutex mutex;
  std::size_t next_to_write = 0;
  std::atomic<std::size_t> next_task{0};
  std::exception_ptr failure;

  auto commit = [&] {
    while (next_to_write < slots.size() && slots[next_to_write]) {
      const RunRecord& r = *slots[next_to_write];
      out << record_to_json(r).dump() << '\n';
      ++summary.written;
      if (!r.scored) ++summary.unscored;
      slots[next_to_write].reset();
      ++next_to_write;
    }
    out.flush();
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Task& t = tasks[i];
        const InstanceId& id = *t.id;
        const Grid& grid = std::as_const(grids).get(id.distribution, id.has_obstacles, id.start_mode, id.grid_index);
        RunRecord r = run_instance(config, id, t.replicate, grid, client, sleep);
        std::lock_guard lock(mutex);
        slots[i] = std::move(r);
        commit();
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next_task = tasks.size();
        return;
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(config.workers, static_cast<int>(tasks.size())));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

}  // namespace grasp

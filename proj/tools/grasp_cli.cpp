// grasp: generate benchmarks, run agents, and report results.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "grasp/grasp.hpp"
#include "grasp/http_client.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 0;
  bool json_out = false;
  bool force = false;

  // gen
  std::string out_dir = "benchmark";
  int per_combo = grasp::kDefaultInstancesPerCombo;

  // run
  std::string agent = "greedy";
  std::string bench_dir;
  std::string subset = "0..99";
  int replicates = 1;
  int workers = 1;
  bool resample_invalid = false;
  std::string cassette;
  std::string llm_config;
  std::string record_cassette;
  std::string results = "results.jsonl";

  // report
  std::string group_by;
  std::string csv_out;

  // render
  std::string grid_file;

  // trace
  std::string instance_id;
  int replicate = 0;
  std::string trace_agent;
};

grasp::GridStore open_grids(const Options& o) {
  return o.bench_dir.empty() ? grasp::GridStore::generated(o.seed) : grasp::GridStore::from_directory(o.bench_dir);
}

std::string file_safe(std::string id) {
  for (auto& c : id)
    if (c == '/') c = '_';
  return id;
}

int cmd_gen(const Options& o) {
  const auto grids = grasp::build_benchmark(o.seed, o.per_combo);
  const auto manifest = grasp::write_benchmark(o.out_dir, grids, o.seed, o.per_combo, o.force);
  if (o.json_out) {
    std::cout << json{{"out", o.out_dir}, {"grid_count", grids.size()}, {"manifest_hash", manifest.hash}}.dump() << "\n";
  } else {
    std::cout << "wrote " << grids.size() << " grids to " << o.out_dir << " (manifest " << manifest.hash << ")\n";
  }
  return 0;
}

int cmd_run(const Options& o) {
  grasp::SuiteConfig config;
  config.agent = grasp::parse_agent(o.agent);
  config.range = grasp::parse_index_range(o.subset);
  config.replicates = o.replicates;
  config.seed = o.seed;
  config.workers = o.workers;
  config.baseline.random_walk.resample_invalid = o.resample_invalid;

  std::unique_ptr<grasp::ChatClient> base;
  std::unique_ptr<grasp::RecordingClient> recorder;
  std::unique_ptr<grasp::AuditingClient> audit;
  grasp::ChatClient* client = nullptr;
  if (config.agent.kind == grasp::AgentKind::Llm) {
    grasp::LlmConfig llm;
    if (!o.llm_config.empty()) llm = grasp::LlmConfig::load(o.llm_config);
    std::string cassette = o.cassette.empty() ? llm.cassette_path : o.cassette;
    config.retry.max_retries = llm.max_retries;
    if (o.workers == 1 && !o.llm_config.empty()) config.workers = llm.concurrency;
    if (!cassette.empty()) {
      base = std::make_unique<grasp::CassetteClient>(grasp::CassetteClient::load(cassette));
    } else {
      base = std::make_unique<grasp::HttpChatClient>(grasp::HttpChatClient::from_config(llm));
    }
    client = base.get();
    if (!o.record_cassette.empty()) {
      recorder = std::make_unique<grasp::RecordingClient>(*client);
      client = recorder.get();
    }
    audit = std::make_unique<grasp::AuditingClient>(*client, o.results + ".audit.jsonl");
    client = audit.get();
  }

  auto grids = open_grids(o);
  const auto summary = grasp::run_suite(config, grids, o.results, client);
  if (recorder) recorder->save(o.record_cassette);

  if (o.json_out) {
    std::cout << json{{"results", o.results},
                      {"written", summary.written},
                      {"skipped", summary.skipped},
                      {"unscored", summary.unscored},
                      {"config", config.to_json()}}
                     .dump()
              << "\n";
  } else {
    std::cout << "wrote " << summary.written << " records (" << summary.skipped << " already present, "
              << summary.unscored << " unscored) to " << o.results << "\n";
  }
  return 0;
}

int cmd_report(const Options& o) {
  const auto records = grasp::load_records(o.results);
  std::optional<std::string> control;
  if (!o.group_by.empty()) control = o.group_by;
  const auto table = grasp::aggregate(records, control);
  const std::string csv = grasp::aggregate_csv(table);
  if (!o.csv_out.empty()) grasp::write_file(o.csv_out, csv);
  if (o.json_out) {
    json rows = json::array();
    for (const auto& row : table.rows)
      for (const auto& [agent, cell] : row.by_agent)
        rows.push_back({{"control", row.control},
                        {"value", row.value},
                        {"agent", agent},
                        {"n", cell.sums.n},
                        {"mean_length", cell.sums.mean_length()},
                        {"mean_energy", cell.sums.mean_energy()},
                        {"stderr_energy", cell.sums.stderr_energy()},
                        {"mark", std::string(grasp::to_string(cell.mark))}});
    std::cout << json{{"rows", rows}, {"unscored", table.unscored}}.dump() << "\n";
  } else {
    std::cout << grasp::aggregate_text(table);
  }
  return 0;
}

grasp::Grid load_grid_file(const fs::path& path) {
  const std::string bytes = grasp::read_file(path);
  if (path.extension() == ".json") return grasp::grid_from_json(json::parse(bytes));
  return grasp::parse_grid(bytes);
}

int cmd_render(const Options& o) {
  const auto grid = load_grid_file(o.grid_file);
  const std::string text = grasp::render(grid);
  if (o.json_out) {
    std::cout << json{{"text", text}, {"lines", grasp::render_lines(grid)}}.dump() << "\n";
  } else {
    std::cout << text;
  }
  return 0;
}

int cmd_trace(const Options& o) {
  const auto records = grasp::load_records(o.results);
  const grasp::RunRecord* found = nullptr;
  for (const auto& r : records)
    if (r.instance_id == o.instance_id && r.replicate == o.replicate &&
        (o.trace_agent.empty() || r.agent == o.trace_agent)) {
      found = &r;
      break;
    }
  if (!found) throw std::runtime_error("no record for " + o.instance_id + " in " + o.results);

  const auto id = grasp::parse_instance_id(found->instance_id);
  auto grids = open_grids(o);
  const auto& grid = grids.get(id.distribution, id.has_obstacles, id.start_mode, id.grid_index);
  if (auto problem = grasp::audit_record(*found, grid)) throw std::runtime_error("record does not replay: " + *problem);

  const std::string name = file_safe(found->instance_id) + "_" + found->agent + "_r" + std::to_string(found->replicate);
  const fs::path trace_path = fs::path(o.out_dir) / "traces" / (name + ".json");
  const fs::path svg_path = fs::path(o.out_dir) / "figures" / (name + ".svg");
  grasp::write_file(trace_path, grasp::record_to_json(*found).dump(2) + "\n");
  grasp::write_file(svg_path, grasp::export_trace_svg(grid, id.constraints, found->trace));
  if (o.json_out) {
    std::cout << json{{"trace", trace_path.string()}, {"svg", svg_path.string()}}.dump() << "\n";
  } else {
    std::cout << "wrote " << trace_path.string() << " and " << svg_path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GRASP gridworld benchmark: generation, agents, evaluation"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate the benchmark grids");
  gen->add_option("--seed", o.seed, "Master seed");
  gen->add_option("--out", o.out_dir, "Output directory");
  gen->add_option("--per-combo", o.per_combo, "Instances per (distribution, obstacle, start) combination")
      ->check(CLI::Range(1, 100));
  gen->add_flag("--force", o.force, "Write into a non-empty directory");
  gen->add_flag("--json", o.json_out, "Machine-readable output");

  auto* run = app.add_subcommand("run", "Run an agent over a subset of instances");
  run->add_option("--agent", o.agent, "random-walk | greedy | llm:<model>");
  run->add_option("--bench", o.bench_dir, "Benchmark directory (default: generate from --seed)");
  run->add_option("--seed", o.seed, "Master seed for grids (without --bench) and agent randomness");
  run->add_option("--subset", o.subset, "Grid index range A..B");
  run->add_option("--replicates", o.replicates, "Runs per instance")->check(CLI::PositiveNumber);
  run->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--resample-invalid,!--no-resample-invalid", o.resample_invalid,
                "Random walk redraws moves that would leave the grid (default off)");
  run->add_option("--cassette", o.cassette, "Replay LLM responses from a cassette file");
  run->add_option("--llm-config", o.llm_config, "LLM client config (endpoint, model, max_retries, ...)");
  run->add_option("--record-cassette", o.record_cassette, "Save LLM responses to a cassette file");
  run->add_option("--out", o.results, "Results file (JSONL, appended)");
  run->add_flag("--json", o.json_out, "Machine-readable output");

  auto* report = app.add_subcommand("report", "Aggregate results by control");
  report->add_option("--results", o.results, "Results file")->check(CLI::ExistingFile);
  report->add_option("--group-by", o.group_by, "Restrict to one control, e.g. \"Energy Cost Per Step\"");
  report->add_option("--csv", o.csv_out, "Also write aggregates as CSV");
  report->add_flag("--json", o.json_out, "Machine-readable output");

  auto* render = app.add_subcommand("render", "Print a grid in text form");
  render->add_option("grid", o.grid_file, "Grid file (.json or .txt)")->required()->check(CLI::ExistingFile);
  render->add_flag("--json", o.json_out, "Machine-readable output");

  auto* trace = app.add_subcommand("trace", "Export a record as trace JSON and SVG");
  trace->add_option("--results", o.results, "Results file")->check(CLI::ExistingFile);
  trace->add_option("--id", o.instance_id, "Instance id")->required();
  trace->add_option("--agent", o.trace_agent, "Agent name (default: first match)");
  trace->add_option("--replicate", o.replicate, "Replicate number");
  trace->add_option("--bench", o.bench_dir, "Benchmark directory (default: generate from --seed)");
  trace->add_option("--seed", o.seed, "Master seed for grids without --bench");
  trace->add_option("--out", o.out_dir, "Output directory for traces/ and figures/")->default_str(".");
  trace->add_flag("--json", o.json_out, "Machine-readable output");

  o.out_dir.clear();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (o.out_dir.empty()) o.out_dir = "benchmark";
      return cmd_gen(o);
    }
    if (*run) return cmd_run(o);
    if (*report) return cmd_report(o);
    if (*render) return cmd_render(o);
    if (*trace) {
      if (o.out_dir.empty()) o.out_dir = ".";
      return cmd_trace(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "grasp/generate.hpp"
#include "grasp/json_io.hpp"
#include "grasp/text_render.hpp"

namespace grasp {

namespace fs = std::filesystem;

inline constexpr std::string_view kRngDescription = "pcg32-xsh-rr seeded via splitmix64; grid seed = mix_seed(master, dist, obs, start, index)";

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// grids/<dist>/obs<0|1>/<inner|outer>/<index>  (without extension)
inline fs::path grid_stem(DistributionKind kind, bool obstacles, StartMode mode, int index) {
  return fs::path("grids") / std::string(to_string(kind)) / (obstacles ? "obs1" : "obs0") /
         std::string(to_string(mode)) / std::to_string(index);
}

inline fs::path grid_stem(const GridSpec& s) {
  return grid_stem(s.distribution, s.has_obstacles, s.start_mode, s.grid_index);
}

struct BenchmarkManifest {
  nlohmann::json body;
  std::string hash;  // FNV-1a of the serialized manifest
};

/// Writes every grid as a JSON + text pair and a manifest.json. Refuses a
/// non-empty directory unless `force` is set. Output bytes depend only on
/// the grids.
inline BenchmarkManifest write_benchmark(const fs::path& dir, const std::vector<Grid>& grids, std::uint64_t master_seed,
                                         int per_combo, bool force) {
  if (fs::exists(dir) && !fs::is_empty(dir) && !force)
    throw std::runtime_error("output directory " + dir.string() + " is not empty (use --force)");
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& g : grids) {
    const auto stem = grid_stem(g.spec);
    const std::string json_text = grid_to_json(g).dump(2) + "\n";
    const std::string txt = render(g);
    write_file(dir / (stem.string() + ".json"), json_text);
    write_file(dir / (stem.string() + ".txt"), txt);
    entries.push_back({{"id", g.spec.id()},
                       {"json", stem.generic_string() + ".json"},
                       {"txt", stem.generic_string() + ".txt"},
                       {"hash", hex64(fnv1a64(json_text) ^ fnv1a64(txt))}});
  }
  BenchmarkManifest m;
  m.body = {{"format", "grasp-benchmark/1"},
            {"seed", master_seed},
            {"instances_per_combo", per_combo},
            {"grid_count", grids.size()},
            {"rng", kRngDescription},
            {"grids", std::move(entries)}};
  const std::string text = m.body.dump(2) + "\n";
  m.hash = hex64(fnv1a64(text));
  write_file(dir / "manifest.json", text);
  return m;
}

/// Grids addressed by (distribution, obstacles, start mode, index), either
/// generated in memory from a master seed or loaded from a benchmark directory.
class GridStore {
 public:
  static GridStore generated(std::uint64_t master_seed) {
    GridStore s;
    s.master_seed_ = master_seed;
    return s;
  }

  static GridStore from_directory(fs::path dir) {
    if (!fs::exists(dir / "manifest.json")) throw std::runtime_error("no manifest.json in " + dir.string());
    GridStore s;
    s.dir_ = std::move(dir);
    return s;
  }

  /// Not thread-safe for first access to a key; call preload() before
  /// sharing across threads.
  const Grid& get(DistributionKind kind, bool obstacles, StartMode mode, int index) {
    const std::string key = grid_stem(kind, obstacles, mode, index).generic_string();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Grid g = dir_.empty() ? generate(kind, obstacles, mode, index, master_seed_)
                          : grid_from_json(nlohmann::json::parse(read_file(dir_ / (key + ".json"))));
    return cache_.emplace(key, std::move(g)).first->second;
  }

  const Grid& get(DistributionKind kind, bool obstacles, StartMode mode, int index) const {
    const auto it = cache_.find(grid_stem(kind, obstacles, mode, index).generic_string());
    if (it == cache_.end()) throw std::logic_error("grid not preloaded");
    return it->second;
  }

  void preload(int first_index, int last_index) {
    for (auto kind : kAllDistributions)
      for (bool obs : {true, false})
        for (auto mode : kAllStartModes)
          for (int i = first_index; i <= last_index; ++i) get(kind, obs, mode, i);
  }

  std::string source() const {
    return dir_.empty() ? "generated:seed=" + std::to_string(master_seed_) : dir_.string();
  }

 private:
  std::uint64_t master_seed_ = 0;
  fs::path dir_;
  std::map<std::string, Grid> cache_;
};

}  // namespace grasp

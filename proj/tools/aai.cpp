// aai: command line front end for the arena engine.

#include <algorithm>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "aai/agents.hpp"
#include "aai/battery.hpp"
#include "aai/catalog.hpp"
#include "aai/config_io.hpp"
#include "aai/harness.hpp"
#include "aai/render.hpp"
#include "aai/report.hpp"
#include "aai/server.hpp"
#include "aai/spawn.hpp"
#include "aai/taskgen.hpp"
#include "aai/validate.hpp"

namespace fs = std::filesystem;

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

int cmd_validate(const std::string& file, bool spawn_check, std::uint64_t seed, bool as_json) {
  aai::ArenaConfigDoc doc;
  try {
    doc = aai::load_config(file);
  } catch (const aai::ParseError& e) {
    std::cerr << file << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return 2;
  }
  const auto violations = aai::validate_config(doc);
  nlohmann::json out = {{"file", file}, {"violations", nlohmann::json::array()}};
  for (const auto& v : violations) out["violations"].push_back(aai::to_json(v));
  bool ok = !aai::has_errors(violations);
  if (spawn_check && ok) {
    out["spawn"] = nlohmann::json::object();
    for (const auto& [index, spec] : doc.arenas) {
      try {
        const auto [world, report] = aai::build_world(spec, aai::arena_seed(seed, index));
        out["spawn"][std::to_string(index)] = report.to_json();
        for (const auto& r : report.records) {
          if (r.status != aai::SpawnStatus::kPlaced && !as_json) {
            std::cout << fmt::format("arena {} item {}[{}] {}: {} after {} attempt(s)\n", index, r.item, r.instance, r.name,
                                     aai::to_string(r.status), r.attempts);
          }
        }
      } catch (const aai::AgentPlacementError& e) {
        ok = false;
        out["spawn"][std::to_string(index)] = {{"error", e.what()}};
        if (!as_json) std::cout << fmt::format("arena {}: {}\n", index, e.what());
      }
    }
  }
  out["valid"] = ok;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& v : violations) {
      std::cout << fmt::format("{}: arena {} item {} {}: {}\n", v.severity == aai::Severity::kError ? "error" : "warning",
                               v.arena, v.item, v.field, v.reason);
    }
    std::cout << (ok ? "valid\n" : "invalid\n");
  }
  return ok ? 0 : 1;
}

aai::RunOptions run_options(int resolution, int arena) {
  aai::RunOptions o;
  o.resolution = resolution;
  o.arena = arena;
  return o;
}

int cmd_run(const std::string& config, const std::string& agent_spec, int episodes, std::uint64_t seed, int resolution,
            int arena, const std::string& log_path, const std::string& csv_path) {
  const auto doc = aai::load_config(config);
  auto agent = aai::make_agent(agent_spec, resolution);
  const auto stats = aai::run_episodes(*agent, doc, episodes, seed, run_options(resolution, arena));
  auto j = aai::to_json(stats);
  j["agent"] = agent->name();
  if (!log_path.empty()) aai::write_text(log_path, j.dump(2) + "\n");
  if (!csv_path.empty()) aai::write_text(csv_path, aai::to_csv(stats));
  nlohmann::json summary = j;
  summary.erase("log");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_gen_maze(const std::string& kind, std::uint64_t seed, const std::string& out) {
  int n = 0;
  aai::ArenaConfigDoc doc;
  switch (aai::parse_maze_kind(kind, n)) {
    case aai::MazeKind::kGrid:
      doc = aai::gen_grid_maze(n, seed);
      break;
    case aai::MazeKind::kScrambled:
      doc = aai::gen_scrambled_maze(seed);
      break;
    case aai::MazeKind::kCircular:
      doc = aai::gen_circular_maze(seed);
      break;
  }
  if (out.empty() || out == "-") {
    std::cout << aai::serialize_config(doc);
  } else {
    aai::save_config(doc, out);
  }
  return 0;
}

std::string level_file(int level) { return fmt::format("level{:02}.yaml", level); }

int cmd_gen_curriculum(int levels, const std::string& dir) {
  if (levels < 1 || levels > aai::kCurriculumLevels) {
    throw std::invalid_argument(fmt::format("levels must be between 1 and {}", aai::kCurriculumLevels));
  }
  fs::create_directories(dir);
  for (int level = 1; level <= levels; ++level) aai::save_config(aai::gen_wall_curriculum(level), fs::path(dir) / level_file(level));
  std::cout << fmt::format("wrote {} levels to {}\n", levels, dir);
  return 0;
}

int cmd_gen_battery(std::uint64_t seed, const std::string& dir) {
  const auto path = aai::write_battery(aai::gen_sample_battery(seed), dir);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_curriculum(const std::string& dir, double threshold, int window, const std::string& agent_spec, int budget,
                   std::uint64_t seed, int resolution, const std::string& log_path) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".yaml" || e.path().extension() == ".yml") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no level configs in " + dir);
  std::vector<aai::ArenaConfigDoc> levels;
  for (const auto& f : files) levels.push_back(aai::load_config(f));
  auto agent = aai::make_agent(agent_spec, resolution);
  const aai::CurriculumTrigger trigger{threshold, window};
  const auto log = aai::run_curriculum(levels, trigger, *agent, seed, budget, run_options(resolution, -1));
  const auto j = aai::to_json(log);
  if (!log_path.empty()) aai::write_text(log_path, j.dump(2) + "\n");
  std::cout << fmt::format("episodes {} final level {} of {} advanced after {}\n", log.entries.size(), log.final_level + 1,
                           levels.size(), nlohmann::json(log.advanced_after).dump());
  return 0;
}

int cmd_eval(const std::string& manifest, const std::string& agent_spec, std::uint64_t seed, int resolution,
             const std::string& report_path, const std::string& csv_path) {
  const auto entries = aai::load_manifest(manifest);
  auto agent = aai::make_agent(agent_spec, resolution);
  const auto report = aai::run_battery(entries, *agent, seed, run_options(resolution, -1));
  if (!report_path.empty()) aai::write_text(report_path, aai::to_json(report).dump(2) + "\n");
  if (!csv_path.empty()) aai::write_text(csv_path, aai::to_csv(report));
  std::cout << aai::to_csv(report);
  if (report.overall) std::cout << fmt::format("overall {:.4f}\n", *report.overall);
  return 0;
}

int cmd_serve(const std::string& host, int port, int max_sessions) {
  aai::ServerOptions o;
  o.host = host;
  o.port = port;
  o.max_sessions = max_sessions;
  aai::Server server(o);
  server.start();
  std::cout << fmt::format("serving AAIP/1 on {}:{}\n", host, server.port()) << std::flush;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}

int cmd_agent_serve(const std::string& agent_spec, const std::string& host, int port, int connections) {
  aai::AgentServer server(aai::make_agent(agent_spec), port, host);
  std::cout << fmt::format("serving agent {} on {}:{}\n", agent_spec, host, server.port()) << std::flush;
  server.run(connections);
  return 0;
}

int cmd_render(const std::string& config, std::uint64_t seed, int resolution, int arena, const std::string& out) {
  aai::Environment env(resolution);
  const auto obs = env.reset(aai::load_config(config), seed);
  const int index = arena < 0 ? obs.begin()->first : arena;
  aai::write_png(out, obs.at(index).frame);
  std::cout << fmt::format("wrote {} ({}x{}, hash {:016x})\n", out, resolution, resolution, aai::frame_hash(obs.at(index).frame));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Headless arena environment: configs, episodes, generators, evaluation and the AAIP/1 server"};
  app.require_subcommand(1);

  std::string file;
  bool spawn_check = false;
  bool as_json = false;
  std::uint64_t seed = 0;
  auto* validate = app.add_subcommand("validate", "Check a config document");
  validate->add_option("file", file, "Config file")->required()->check(CLI::ExistingFile);
  validate->add_flag("--spawn-check", spawn_check, "Also build every arena and report skipped items");
  validate->add_option("--seed", seed, "Seed for --spawn-check");
  validate->add_flag("--json", as_json, "Machine-readable output");

  std::string config;
  std::string agent = "random";
  int episodes = 1;
  int resolution = 84;
  int arena = -1;
  std::string log_path;
  std::string csv_path;
  auto* run = app.add_subcommand("run", "Run episodes with an agent");
  run->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--agent", agent, "random | greedy | null | remote:HOST:PORT");
  run->add_option("--episodes", episodes, "Episode count")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--resolution", resolution, "Observation size k");
  run->add_option("--arena", arena, "Arena index (default: lowest)");
  run->add_option("--log", log_path, "Write the JSON run log here");
  run->add_option("--csv", csv_path, "Write the per-episode CSV here");

  auto* gen = app.add_subcommand("gen", "Generate configs");
  gen->require_subcommand(1);
  std::string kind;
  std::string out;
  auto* gen_maze = gen->add_subcommand("maze", "One maze arena");
  gen_maze->add_option("--kind", kind, "2x2 .. 8x8 | scrambled | circular")->required();
  gen_maze->add_option("--seed", seed, "Seed");
  gen_maze->add_option("-o,--out", out, "Output file (default: stdout)");
  int levels = aai::kCurriculumLevels;
  auto* gen_curr = gen->add_subcommand("curriculum", "Wall curriculum levels");
  gen_curr->add_option("--levels", levels, "Number of levels");
  gen_curr->add_option("-o,--out", out, "Output directory")->required();
  auto* gen_batt = gen->add_subcommand("battery", "Sample battery with manifest.json");
  gen_batt->add_option("--seed", seed, "Seed");
  gen_batt->add_option("-o,--out", out, "Output directory")->required();

  std::string dir;
  double threshold = 0.85;
  int window = 600;
  int budget = 6000;
  auto* curr = app.add_subcommand("curriculum", "Run a curriculum over the configs in a directory (sorted by name)");
  curr->add_option("--dir", dir, "Level directory")->required()->check(CLI::ExistingDirectory);
  curr->add_option("--threshold", threshold, "Success rate needed to advance");
  curr->add_option("--window", window, "Trailing window in episodes");
  curr->add_option("--agent", agent, "Agent");
  curr->add_option("--episodes", budget, "Episode budget");
  curr->add_option("--seed", seed, "Base seed");
  curr->add_option("--resolution", resolution, "Observation size k");
  curr->add_option("--log", log_path, "Write the JSON level log here");

  std::string manifest;
  std::string report_path;
  auto* eval = app.add_subcommand("eval", "Score an agent on a battery manifest");
  eval->add_option("--manifest", manifest, "manifest.json")->required()->check(CLI::ExistingFile);
  eval->add_option("--agent", agent, "Agent");
  eval->add_option("--seed", seed, "Base seed");
  eval->add_option("--resolution", resolution, "Observation size k");
  eval->add_option("--report", report_path, "Write the JSON report here");
  eval->add_option("--csv", csv_path, "Write the per-category CSV here");

  std::string host = "127.0.0.1";
  int port = 7700;
  int max_sessions = 16;
  auto* serve = app.add_subcommand("serve", "Run the AAIP/1 environment server (TCP and WebSocket on one port)");
  serve->add_option("--port", port, "Port (0 picks one)");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--max-sessions", max_sessions, "Concurrent session limit")->check(CLI::PositiveNumber);

  int connections = 0;
  auto* agent_serve = app.add_subcommand("agent-serve", "Serve a built-in agent to remote:HOST:PORT clients");
  agent_serve->add_option("--agent", agent, "Agent")->required();
  agent_serve->add_option("--port", port, "Port (0 picks one)");
  agent_serve->add_option("--host", host, "Listen address");
  agent_serve->add_option("--connections", connections, "Exit after this many connections (0 = never)");

  auto* cat = app.add_subcommand("catalog", "Print the object catalog as JSON");

  auto* rend = app.add_subcommand("render", "Write the reset frame of a config as PNG");
  rend->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  rend->add_option("--seed", seed, "Seed");
  rend->add_option("--resolution", resolution, "Image size");
  rend->add_option("--arena", arena, "Arena index");
  rend->add_option("-o,--out", out, "PNG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(file, spawn_check, seed, as_json);
    if (*run) return cmd_run(config, agent, episodes, seed, resolution, arena, log_path, csv_path);
    if (*gen_maze) return cmd_gen_maze(kind, seed, out);
    if (*gen_curr) return cmd_gen_curriculum(levels, out);
    if (*gen_batt) return cmd_gen_battery(seed, out);
    if (*curr) return cmd_curriculum(dir, threshold, window, agent, budget, seed, resolution, log_path);
    if (*eval) return cmd_eval(manifest, agent, seed, resolution, report_path, csv_path);
    if (*serve) return cmd_serve(host, port, max_sessions);
    if (*agent_serve) return cmd_agent_serve(agent, host, port, connections);
    if (*cat) {
      std::cout << aai::catalog_json().dump(2) << "\n";
      return 0;
    }
    if (*rend) return cmd_render(config, seed, resolution, arena, out);
  } catch (const aai::ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

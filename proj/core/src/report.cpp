#include "aai/report.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace aai {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string number(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

nlohmann::json to_json(const RunStats& stats) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& e : stats.log) {
    log.push_back({{"episode", e.episode},
                   {"seed", e.seed},
                   {"reward", e.reward},
                   {"steps", e.steps},
                   {"success", e.success},
                   {"cause", to_string(e.cause)}});
  }
  return {{"schema", kReportSchemaVersion},
          {"kind", "run"},
          {"episodes", stats.episodes},
          {"average_reward", optional_number(stats.average_reward)},
          {"success_rate", optional_number(stats.success_rate)},
          {"log", std::move(log)}};
}

std::string to_csv(const RunStats& stats) {
  std::string out = "episode,seed,reward,steps,success,cause\n";
  for (const auto& e : stats.log) {
    out += fmt::format("{},{},{},{},{},{}\n", e.episode, e.seed, number(e.reward), e.steps, e.success ? 1 : 0,
                       to_string(e.cause));
  }
  return out;
}

nlohmann::json to_json(const CurriculumLog& log) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : log.entries) {
    entries.push_back({{"episode", e.episode}, {"level", e.level}, {"success", e.success}, {"reward", e.reward}});
  }
  return {{"schema", kReportSchemaVersion},
          {"kind", "curriculum"},
          {"final_level", log.final_level},
          {"advanced_after", log.advanced_after},
          {"entries", std::move(entries)}};
}

std::string to_csv(const CurriculumLog& log) {
  std::string out = "episode,level,success,reward\n";
  for (const auto& e : log.entries) {
    out += fmt::format("{},{},{},{}\n", e.episode, e.level, e.success ? 1 : 0, number(e.reward));
  }
  return out;
}

nlohmann::json to_json(const BatteryReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name},
                       {"category", e.category},
                       {"difficulty", e.difficulty},
                       {"threshold", e.threshold},
                       {"reward", e.reward},
                       {"steps", e.steps},
                       {"passed", e.passed},
                       {"cause", to_string(e.cause)}});
  }
  nlohmann::json categories = nlohmann::json::array();
  for (const auto& c : report.categories) {
    categories.push_back({{"category", c.category},
                          {"entries", c.entries},
                          {"pass_rate", c.pass_rate},
                          {"average_reward", c.average_reward}});
  }
  return {{"schema", kReportSchemaVersion},
          {"kind", "battery"},
          {"agent", report.agent},
          {"seed", report.seed},
          {"overall", optional_number(report.overall)},
          {"categories", std::move(categories)},
          {"entries", std::move(entries)}};
}

std::string to_csv(const BatteryReport& report) {
  std::string out = "category,entries,pass_rate,average_reward\n";
  for (const auto& c : report.categories) {
    out += fmt::format("{},{},{},{}\n", c.category, c.entries, number(c.pass_rate), number(c.average_reward));
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace aai

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "aai/harness.hpp"

namespace aai {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const RunStats& stats);
std::string to_csv(const RunStats& stats);

nlohmann::json to_json(const CurriculumLog& log);
std::string to_csv(const CurriculumLog& log);

nlohmann::json to_json(const BatteryReport& report);
/// One row per category: category,entries,pass_rate,average_reward.
std::string to_csv(const BatteryReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace aai

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aai/types.hpp"

namespace aai {

enum class Severity { kError, kWarning };

struct Violation {
  int arena = -1;
  int item = -1;  // -1 for arena-level problems
  std::string field;
  std::string reason;
  Severity severity = Severity::kError;

  bool operator==(const Violation&) const = default;
};

/// Structural check of a parsed document against the catalog. Pure.
std::vector<Violation> validate_config(const ArenaConfigDoc& doc);

/// True when no violation has error severity.
bool has_errors(const std::vector<Violation>& violations);

bool blackouts_well_formed(const std::vector<int>& blackouts);

nlohmann::json to_json(const Violation& v);

}  // namespace aai

#include "aai/validate.hpp"

#include <fmt/format.h>

#include "aai/catalog.hpp"

namespace aai {
namespace {

std::string format_value(double v) { return fmt::format("{}", v); }

void check_axis(std::vector<Violation>& out, int arena, int item, const std::string& field, char axis,
                double value, const AxisRange& r) {
  if (is_random(value) || r.contains(value)) return;
  out.push_back({arena, item, fmt::format("{}.{}", field, axis),
                 fmt::format("{} outside [{}, {}]", format_value(value), format_value(r.lo), format_value(r.hi)),
                 Severity::kError});
}

void check_item(std::vector<Violation>& out, int arena, int index, const ItemSpec& item) {
  const CatalogEntry* entry = find_catalog_entry(item.name);
  if (entry == nullptr) {
    out.push_back({arena, index, "name", "unknown object '" + item.name + "'", Severity::kError});
    return;
  }
  for (std::size_t i = 0; i < item.sizes.size(); ++i) {
    const auto field = fmt::format("sizes[{}]", i);
    check_axis(out, arena, index, field, 'x', item.sizes[i].x, entry->size_x);
    check_axis(out, arena, index, field, 'y', item.sizes[i].y, entry->size_y);
    check_axis(out, arena, index, field, 'z', item.sizes[i].z, entry->size_z);
  }
  for (std::size_t i = 0; i < item.rotations.size(); ++i) {
    const double r = item.rotations[i];
    if (!is_random(r) && !(r >= 0.0 && r <= 360.0)) {
      out.push_back({arena, index, fmt::format("rotations[{}]", i),
                     fmt::format("{} outside [0, 360]", format_value(r)), Severity::kError});
    }
  }
  for (std::size_t i = 0; i < item.colors.size(); ++i) {
    const Rgb& c = item.colors[i];
    for (int channel : {c.r, c.g, c.b}) {
      if (channel != -1 && (channel < 0 || channel > 255)) {
        out.push_back({arena, index, fmt::format("colors[{}]", i),
                       fmt::format("channel {} outside [0, 255]", channel), Severity::kError});
        break;
      }
    }
  }
  if (entry->fixed_color && !item.colors.empty()) {
    out.push_back({arena, index, "colors", item.name + " has a fixed color; listed colors are ignored",
                   Severity::kWarning});
  }
  for (std::size_t i = 0; i < item.positions.size(); ++i) {
    const Vec3& p = item.positions[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      out.push_back({arena, index, fmt::format("positions[{}]", i), "non-finite component", Severity::kError});
    }
  }
}

}  // namespace

bool blackouts_well_formed(const std::vector<int>& blackouts) {
  if (blackouts.empty()) return true;
  if (blackouts.size() == 1 && blackouts.front() < 0) return true;
  int previous = 0;
  for (int step : blackouts) {
    if (step <= previous) return false;
    previous = step;
  }
  return true;
}

std::vector<Violation> validate_config(const ArenaConfigDoc& doc) {
  std::vector<Violation> out;
  for (const auto& [index, arena] : doc.arenas) {
    if (index < 0) out.push_back({index, -1, "index", "arena index must be >= 0", Severity::kError});
    if (arena.t < 0) out.push_back({index, -1, "t", "time limit must be >= 0", Severity::kError});
    if (!blackouts_well_formed(arena.blackouts)) {
      out.push_back({index, -1, "blackouts",
                     "must be strictly increasing positive steps or a single negative period", Severity::kError});
    }
    for (std::size_t i = 0; i < arena.items.size(); ++i) {
      check_item(out, index, static_cast<int>(i), arena.items[i]);
    }
  }
  for (const auto& u : doc.unknown_fields) {
    out.push_back({u.arena, u.item, u.key, fmt::format("unknown key at line {}, column {}", u.line, u.column),
                   Severity::kWarning});
  }
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    if (v.severity == Severity::kError) return true;
  }
  return false;
}

nlohmann::json to_json(const Violation& v) {
  return {{"arena", v.arena},
          {"item", v.item},
          {"field", v.field},
          {"reason", v.reason},
          {"severity", v.severity == Severity::kError ? "error" : "warning"}};
}

}  // namespace aai

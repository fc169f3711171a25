#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "aai/types.hpp"

namespace aai {

/// Raised for malformed documents. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::string expected_tag = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  /// Tag the parser expected at the failure point, when one applies.
  const std::string& expected_tag() const { return expected_tag_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::string expected_tag_;
};

/// Parses an arena configuration written with the !ArenaConfig, !Arena,
/// !Item, !Vector3 and !RGB tags.
///
/// Supported syntax: block mappings and sequences (including sequences
/// indented at the level of their key), flow sequences `[...]` that may
/// span lines, flow mappings `{x: .., y: .., z: ..}`, `#` comments, and
/// the elision entry `- ...` which repeats the previous list entry until
/// the list is as long as the longest sibling list of the item.
ArenaConfigDoc parse_config(std::string_view text);

ArenaConfigDoc load_config(const std::filesystem::path& path);

/// Canonical text form; field order name/positions/rotations/colors/sizes.
std::string serialize_config(const ArenaConfigDoc& doc);

void save_config(const ArenaConfigDoc& doc, const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace aai

#include "aai/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace aai {

ParseError::ParseError(int line, int column, std::string message, std::string expected_tag)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_tag_(std::move(expected_tag)) {}

namespace {

constexpr std::string_view kTagConfig = "!ArenaConfig";
constexpr std::string_view kTagArena = "!Arena";
constexpr std::string_view kTagItem = "!Item";
constexpr std::string_view kTagVector = "!Vector3";
constexpr std::string_view kTagRgb = "!RGB";

bool known_tag(std::string_view tag) {
  return tag == kTagConfig || tag == kTagArena || tag == kTagItem || tag == kTagVector || tag == kTagRgb;
}

struct Position {
  int line = 0;
  int column = 0;
};

struct Node {
  enum class Kind { kNull, kScalar, kSeq, kMap, kEllipsis };

  Kind kind = Kind::kNull;
  Position at;
  std::string tag;
  Position tag_at;
  std::string scalar;
  std::vector<Node> items;
  std::vector<std::pair<std::string, Node>> entries;
  std::vector<Position> key_at;
};

struct Line {
  int number = 0;
  int indent = 0;    // leading spaces
  std::string text;  // content after indentation, comment stripped, right-trimmed
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string strip_comment(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return std::string(trim(s.substr(0, i)));
    }
  }
  return std::string(trim(s));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    int indent = 0;
    while (static_cast<std::size_t>(indent) < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) {
      if (raw[indent] == '\t') {
        throw ParseError(number, indent + 1, "tab character in indentation");
      }
      ++indent;
    }
    std::string content = strip_comment(raw.substr(indent));
    if (!content.empty()) lines.push_back({number, indent, std::move(content)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool is_seq_entry(std::string_view text) { return text == "-" || text.starts_with("- "); }

/// Position of the `:` that ends a mapping key, or npos.
std::size_t key_colon(std::string_view text) {
  if (text.empty() || text.front() == '[' || text.front() == '{' || text.front() == '!') {
    return std::string_view::npos;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ':' && (i + 1 == text.size() || text[i + 1] == ' ')) return i;
    if (text[i] == '[' || text[i] == '{') return std::string_view::npos;
  }
  return std::string_view::npos;
}

/// Source text for a flow collection with per-character positions.
struct FlowText {
  std::string text;
  std::vector<Position> at;

  void append(std::string_view s, int line, int column) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      text.push_back(s[i]);
      at.push_back({line, column + static_cast<int>(i)});
    }
  }
};

class FlowParser {
 public:
  explicit FlowParser(const FlowText& src) : src_(src) {}

  Node parse_all() {
    Node n = parse_value();
    skip_ws();
    if (i_ < src_.text.size()) fail("unexpected trailing text in flow collection");
    return n;
  }

 private:
  Position here() const {
    if (src_.at.empty()) return {};
    return i_ < src_.at.size() ? src_.at[i_] : Position{src_.at.back().line, src_.at.back().column + 1};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Position p = here();
    throw ParseError(p.line, p.column, msg);
  }

  void skip_ws() {
    while (i_ < src_.text.size() && (src_.text[i_] == ' ' || src_.text[i_] == '\t')) ++i_;
  }

  char peek() const { return i_ < src_.text.size() ? src_.text[i_] : '\0'; }

  Node parse_value() {
    skip_ws();
    Node n;
    if (peek() == '!') {
      n.tag_at = here();
      const std::size_t start = i_;
      while (i_ < src_.text.size() && src_.text[i_] != ' ' && src_.text[i_] != '{' && src_.text[i_] != '[' &&
             src_.text[i_] != ',' && src_.text[i_] != ']' && src_.text[i_] != '}') {
        ++i_;
      }
      n.tag = src_.text.substr(start, i_ - start);
      skip_ws();
    }
    n.at = here();
    const char c = peek();
    if (c == '{') {
      ++i_;
      n.kind = Node::Kind::kMap;
      parse_map_body(n);
    } else if (c == '[') {
      ++i_;
      n.kind = Node::Kind::kSeq;
      parse_seq_body(n);
    } else {
      const std::size_t start = i_;
      char quote = 0;
      while (i_ < src_.text.size()) {
        const char d = src_.text[i_];
        if (quote != 0) {
          if (d == quote) quote = 0;
        } else if (d == '"' || d == '\'') {
          quote = d;
        } else if (d == ',' || d == ']' || d == '}') {
          break;
        }
        ++i_;
      }
      const auto text = trim(std::string_view(src_.text).substr(start, i_ - start));
      if (text.empty()) {
        if (!n.tag.empty()) return n;  // tagged null
        fail("expected a value");
      }
      n.kind = Node::Kind::kScalar;
      n.scalar = std::string(text);
    }
    return n;
  }

  void parse_map_body(Node& n) {
    skip_ws();
    if (peek() == '}') {
      ++i_;
      return;
    }
    while (true) {
      skip_ws();
      const Position key_pos = here();
      const std::size_t start = i_;
      while (i_ < src_.text.size() && src_.text[i_] != ':' && src_.text[i_] != ',' && src_.text[i_] != '}') ++i_;
      if (peek() != ':') fail("expected ':' after flow mapping key");
      const auto key = trim(std::string_view(src_.text).substr(start, i_ - start));
      if (key.empty()) fail("empty flow mapping key");
      ++i_;
      Node value = parse_value();
      n.entries.emplace_back(std::string(key), std::move(value));
      n.key_at.push_back(key_pos);
      skip_ws();
      if (peek() == ',') {
        ++i_;
        skip_ws();
        if (peek() == '}') {
          ++i_;
          return;
        }
        continue;
      }
      if (peek() == '}') {
        ++i_;
        return;
      }
      fail("expected ',' or '}' in flow mapping");
    }
  }

  void parse_seq_body(Node& n) {
    skip_ws();
    if (peek() == ']') {
      ++i_;
      return;
    }
    while (true) {
      n.items.push_back(parse_value());
      skip_ws();
      if (peek() == ',') {
        ++i_;
        skip_ws();
        if (peek() == ']') {
          ++i_;
          return;
        }
        continue;
      }
      if (peek() == ']') {
        ++i_;
        return;
      }
      fail("expected ',' or ']' in flow sequence");
    }
  }

  const FlowText& src_;
  std::size_t i_ = 0;
};

class BlockParser {
 public:
  explicit BlockParser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Node parse_document() {
    if (lines_.empty()) return {};
    Node root;
    const Line& first = lines_.front();
    if (first.text.front() == '!' && first.text.find(' ') == std::string::npos) {
      // A lone root tag line such as "!ArenaConfig".
      root.tag = first.text;
      root.tag_at = {first.number, first.indent + 1};
      ++pos_;
      if (pos_ < lines_.size()) {
        Node body = parse_block(lines_[pos_].indent);
        body.tag = root.tag;
        body.tag_at = root.tag_at;
        root = std::move(body);
      }
    } else {
      root = parse_block(first.indent);
    }
    if (pos_ < lines_.size()) {
      const Line& l = lines_[pos_];
      throw ParseError(l.number, l.indent + 1, "unexpected indentation");
    }
    return root;
  }

 private:
  Node parse_block(int indent) {
    const Line& l = lines_[pos_];
    if (is_seq_entry(l.text)) return parse_seq(indent);
    return parse_map(indent);
  }

  Node parse_map(int indent) {
    Node n;
    n.kind = Node::Kind::kMap;
    n.at = {lines_[pos_].number, indent + 1};
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_];
      if (l.indent < indent) break;
      if (l.indent > indent) throw ParseError(l.number, l.indent + 1, "unexpected indentation");
      if (is_seq_entry(l.text)) throw ParseError(l.number, l.indent + 1, "unexpected sequence entry");
      const std::size_t colon = key_colon(l.text);
      if (colon == std::string_view::npos) {
        throw ParseError(l.number, l.indent + 1, "expected 'key: value'");
      }
      const std::string key(trim(std::string_view(l.text).substr(0, colon)));
      const std::string_view after = std::string_view(l.text).substr(colon + 1);
      std::size_t lead = 0;
      while (lead < after.size() && after[lead] == ' ') ++lead;
      const std::string rest(trim(after));
      const Position value_at{l.number, l.indent + static_cast<int>(colon) + 2 + static_cast<int>(lead)};
      const Position key_pos{l.number, l.indent + 1};
      ++pos_;
      Node value = parse_value(rest, value_at, indent, true);
      n.entries.emplace_back(key, std::move(value));
      n.key_at.push_back(key_pos);
    }
    return n;
  }

  Node parse_seq(int indent) {
    Node n;
    n.kind = Node::Kind::kSeq;
    n.at = {lines_[pos_].number, indent + 1};
    while (pos_ < lines_.size()) {
      Line& l = lines_[pos_];
      if (l.indent < indent) break;
      if (l.indent > indent) throw ParseError(l.number, l.indent + 1, "unexpected indentation");
      if (!is_seq_entry(l.text)) break;
      std::size_t skip = 1;
      while (skip < l.text.size() && l.text[skip] == ' ') ++skip;
      const std::string content = l.text.substr(skip);
      const Position content_at{l.number, l.indent + static_cast<int>(skip) + 1};
      if (content == "...") {
        Node e;
        e.kind = Node::Kind::kEllipsis;
        e.at = content_at;
        n.items.push_back(std::move(e));
        ++pos_;
        continue;
      }
      if (!content.empty() && key_colon(content) != std::string_view::npos) {
        // "- key: value" opens a mapping aligned with the first key.
        l.indent = content_at.column - 1;
        l.text = content;
        n.items.push_back(parse_map(l.indent));
        continue;
      }
      ++pos_;
      n.items.push_back(parse_value(content, content_at, indent, false));
    }
    return n;
  }

  Node parse_value(const std::string& rest, Position at, int parent_indent, bool allow_compact_seq) {
    if (rest.empty()) {
      if (pos_ < lines_.size() && lines_[pos_].indent > parent_indent) {
        return parse_block(lines_[pos_].indent);
      }
      if (allow_compact_seq && pos_ < lines_.size() && lines_[pos_].indent == parent_indent &&
          is_seq_entry(lines_[pos_].text)) {
        return parse_seq(parent_indent);
      }
      Node null_node;
      null_node.at = at;
      return null_node;
    }
    if (rest.front() == '!') {
      const std::size_t space = rest.find(' ');
      const std::string tag = rest.substr(0, space);
      const Position tag_at = at;
      if (space == std::string::npos) {
        Node child;
        if (pos_ < lines_.size() && lines_[pos_].indent > parent_indent) {
          child = parse_block(lines_[pos_].indent);
        } else {
          child.at = at;
        }
        child.tag = tag;
        child.tag_at = tag_at;
        return child;
      }
      std::size_t start = space;
      while (start < rest.size() && rest[start] == ' ') ++start;
      Node child = parse_inline(rest.substr(start), {at.line, at.column + static_cast<int>(start)});
      child.tag = tag;
      child.tag_at = tag_at;
      return child;
    }
    return parse_inline(rest, at);
  }

  Node parse_inline(const std::string& text, Position at) {
    if (text.front() == '[' || text.front() == '{') {
      FlowText flow;
      flow.append(text, at.line, at.column);
      int depth = bracket_depth(text);
      while (depth > 0) {
        if (pos_ >= lines_.size()) throw ParseError(at.line, at.column, "unterminated flow collection");
        const Line& next = lines_[pos_++];
        flow.append(" ", next.number, next.indent);
        flow.append(next.text, next.number, next.indent + 1);
        depth += bracket_depth(next.text);
      }
      return FlowParser(flow).parse_all();
    }
    Node n;
    n.kind = Node::Kind::kScalar;
    n.at = at;
    n.scalar = text;
    return n;
  }

  static int bracket_depth(std::string_view s) {
    int depth = 0;
    for (char c : s) {
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') --depth;
    }
    return depth;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Binding the node tree to the typed document.

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

class Binder {
 public:
  ArenaConfigDoc bind(const Node& root) {
    ArenaConfigDoc doc;
    if (root.kind == Node::Kind::kNull && root.tag.empty()) return doc;
    check_tag(root, kTagConfig);
    require_map(root, "document root");
    check_duplicate_keys(root);
    for (std::size_t i = 0; i < root.entries.size(); ++i) {
      const auto& [key, value] = root.entries[i];
      if (key == "arenas") {
        bind_arenas(value, doc);
      } else {
        note_unknown(doc, -1, -1, key, root.key_at[i], value);
      }
    }
    return doc;
  }

 private:
  [[noreturn]] static void fail(Position at, const std::string& msg, std::string expected = {}) {
    throw ParseError(at.line, at.column, msg, std::move(expected));
  }

  static void check_tag(const Node& n, std::string_view expected) {
    if (n.tag.empty()) return;
    if (!known_tag(n.tag)) fail(n.tag_at, "unknown tag " + n.tag, std::string(expected));
    if (n.tag != expected) {
      fail(n.tag_at, fmt::format("expected {}, found {}", expected, n.tag), std::string(expected));
    }
  }

  /// Any tag inside a subtree we otherwise ignore must still be known.
  static void check_tags_recursive(const Node& n) {
    if (!n.tag.empty() && !known_tag(n.tag)) fail(n.tag_at, "unknown tag " + n.tag);
    for (const auto& item : n.items) check_tags_recursive(item);
    for (const auto& entry : n.entries) check_tags_recursive(entry.second);
  }

  static void require_map(const Node& n, std::string_view what) {
    if (n.kind != Node::Kind::kMap) fail(n.at, fmt::format("{} must be a mapping", what));
  }

  static void check_duplicate_keys(const Node& n) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      if (!seen.insert(n.entries[i].first).second) {
        fail(n.key_at[i], "duplicate key '" + n.entries[i].first + "'");
      }
    }
  }

  void note_unknown(ArenaConfigDoc& doc, int arena, int item, const std::string& key, Position at,
                    const Node& value) {
    check_tags_recursive(value);
    doc.unknown_fields.push_back({arena, item, key, at.line, at.column});
  }

  static double to_real(const Node& n) {
    if (n.kind != Node::Kind::kScalar) fail(n.at, "expected a number");
    std::string_view s = n.scalar;
    if (s.starts_with('+')) s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(n.at, "expected a number, found '" + n.scalar + "'");
    }
    return v;
  }

  static int to_int(const Node& n) {
    if (n.kind != Node::Kind::kScalar) fail(n.at, "expected an integer");
    std::string_view s = n.scalar;
    if (s.starts_with('+')) s.remove_prefix(1);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < INT32_MIN || v > INT32_MAX) {
      fail(n.at, "expected an integer, found '" + n.scalar + "'");
    }
    return static_cast<int>(v);
  }

  static const std::vector<Node>& seq_items(const Node& n, std::string_view what) {
    static const std::vector<Node> kEmpty;
    if (n.kind == Node::Kind::kNull) return kEmpty;
    if (n.kind != Node::Kind::kSeq) fail(n.at, fmt::format("{} must be a sequence", what));
    return n.items;
  }

  void bind_arenas(const Node& n, ArenaConfigDoc& doc) {
    if (n.kind == Node::Kind::kNull) return;
    require_map(n, "arenas");
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const auto& [key, value] = n.entries[i];
      Node key_node;
      key_node.kind = Node::Kind::kScalar;
      key_node.scalar = key;
      key_node.at = n.key_at[i];
      const int index = to_int(key_node);
      if (index < 0) fail(n.key_at[i], "arena index must be >= 0");
      if (doc.arenas.contains(index)) fail(n.key_at[i], fmt::format("duplicate arena index {}", index));
      doc.arenas[index] = bind_arena(value, index, doc);
    }
  }

  ArenaSpec bind_arena(const Node& n, int index, ArenaConfigDoc& doc) {
    check_tag(n, kTagArena);
    ArenaSpec arena;
    if (n.kind == Node::Kind::kNull) return arena;
    require_map(n, "arena");
    check_duplicate_keys(n);
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const auto& [key, value] = n.entries[i];
      if (key == "t") {
        arena.t = to_int(value);
      } else if (key == "blackouts") {
        for (const auto& b : seq_items(value, "blackouts")) arena.blackouts.push_back(to_int(b));
      } else if (key == "items") {
        const auto& items = seq_items(value, "items");
        for (std::size_t k = 0; k < items.size(); ++k) {
          arena.items.push_back(bind_item(items[k], index, static_cast<int>(k), doc));
        }
      } else {
        note_unknown(doc, index, -1, key, n.key_at[i], value);
      }
    }
    return arena;
  }

  template <typename T>
  struct ListWithElision {
    std::vector<T> values;
    std::ptrdiff_t elision = -1;  // insertion point in `values`
    Position elision_at;
  };

  template <typename T, typename Fn>
  ListWithElision<T> bind_list(const Node& n, std::string_view what, Fn&& convert) {
    ListWithElision<T> out;
    for (const auto& entry : seq_items(n, what)) {
      if (entry.kind == Node::Kind::kEllipsis) {
        if (out.elision >= 0) fail(entry.at, "only one elision entry is allowed per list");
        if (out.values.empty()) fail(entry.at, "elision entry needs a preceding entry to repeat");
        out.elision = static_cast<std::ptrdiff_t>(out.values.size());
        out.elision_at = entry.at;
        continue;
      }
      out.values.push_back(convert(entry));
    }
    return out;
  }

  template <typename T>
  static std::vector<T> expand(ListWithElision<T>&& list, std::size_t target) {
    if (list.elision < 0 || list.values.size() >= target) return std::move(list.values);
    const T repeated = list.values[static_cast<std::size_t>(list.elision) - 1];
    list.values.insert(list.values.begin() + list.elision, target - list.values.size(), repeated);
    return std::move(list.values);
  }

  Vec3 bind_vec3(const Node& n, int arena, int item, ArenaConfigDoc& doc) {
    check_tag(n, kTagVector);
    require_map(n, "!Vector3");
    check_duplicate_keys(n);
    Vec3 v;
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const auto& [key, value] = n.entries[i];
      if (key == "x") {
        v.x = to_real(value);
      } else if (key == "y") {
        v.y = to_real(value);
      } else if (key == "z") {
        v.z = to_real(value);
      } else {
        note_unknown(doc, arena, item, key, n.key_at[i], value);
      }
    }
    return v;
  }

  Rgb bind_rgb(const Node& n, int arena, int item, ArenaConfigDoc& doc) {
    check_tag(n, kTagRgb);
    require_map(n, "!RGB");
    check_duplicate_keys(n);
    Rgb c;
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const auto& [key, value] = n.entries[i];
      if (key == "r") {
        c.r = to_int(value);
      } else if (key == "g") {
        c.g = to_int(value);
      } else if (key == "b") {
        c.b = to_int(value);
      } else {
        note_unknown(doc, arena, item, key, n.key_at[i], value);
      }
    }
    return c;
  }

  ItemSpec bind_item(const Node& n, int arena, int index, ArenaConfigDoc& doc) {
    check_tag(n, kTagItem);
    if (n.kind == Node::Kind::kNull) fail(n.at, "item is missing a name");
    require_map(n, "item");
    check_duplicate_keys(n);
    ItemSpec item;
    bool has_name = false;
    ListWithElision<Vec3> positions;
    ListWithElision<double> rotations;
    ListWithElision<Rgb> colors;
    ListWithElision<Vec3> sizes;
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const auto& [key, value] = n.entries[i];
      if (key == "name") {
        if (value.kind != Node::Kind::kScalar) fail(value.at, "item name must be a scalar");
        item.name = unquote(value.scalar);
        has_name = true;
      } else if (key == "positions") {
        positions = bind_list<Vec3>(value, key, [&](const Node& e) { return bind_vec3(e, arena, index, doc); });
      } else if (key == "rotations") {
        rotations = bind_list<double>(value, key, [](const Node& e) { return to_real(e); });
      } else if (key == "colors") {
        colors = bind_list<Rgb>(value, key, [&](const Node& e) { return bind_rgb(e, arena, index, doc); });
      } else if (key == "sizes") {
        sizes = bind_list<Vec3>(value, key, [&](const Node& e) { return bind_vec3(e, arena, index, doc); });
      } else {
        note_unknown(doc, arena, index, key, n.key_at[i], value);
      }
    }
    if (!has_name) fail(n.at, "item is missing a name");
    const std::size_t target =
        std::max({positions.values.size(), rotations.values.size(), colors.values.size(), sizes.values.size()});
    item.positions = expand(std::move(positions), target);
    item.rotations = expand(std::move(rotations), target);
    item.colors = expand(std::move(colors), target);
    item.sizes = expand(std::move(sizes), target);
    return item;
  }
};

void write_vec3(std::ostringstream& out, const Vec3& v) {
  out << "!Vector3 {x: " << format_number(v.x) << ", y: " << format_number(v.y) << ", z: " << format_number(v.z)
      << "}";
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ArenaConfigDoc parse_config(std::string_view text) {
  BlockParser parser(split_lines(text));
  const Node root = parser.parse_document();
  return Binder().bind(root);
}

ArenaConfigDoc load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ArenaConfigDoc& doc) {
  std::ostringstream out;
  out << "!ArenaConfig\n";
  if (doc.arenas.empty()) {
    out << "arenas: {}\n";
    return out.str();
  }
  out << "arenas:\n";
  for (const auto& [index, arena] : doc.arenas) {
    out << "  " << index << ": !Arena\n";
    out << "    t: " << arena.t << "\n";
    if (!arena.blackouts.empty()) {
      out << "    blackouts: [";
      for (std::size_t i = 0; i < arena.blackouts.size(); ++i) out << (i ? ", " : "") << arena.blackouts[i];
      out << "]\n";
    }
    if (arena.items.empty()) {
      out << "    items: []\n";
      continue;
    }
    out << "    items:\n";
    for (const auto& item : arena.items) {
      out << "    - !Item\n";
      out << "      name: " << item.name << "\n";
      if (!item.positions.empty()) {
        out << "      positions:\n";
        for (const auto& p : item.positions) {
          out << "      - ";
          write_vec3(out, p);
          out << "\n";
        }
      }
      if (!item.rotations.empty()) {
        out << "      rotations: [";
        for (std::size_t i = 0; i < item.rotations.size(); ++i) {
          out << (i ? ", " : "") << format_number(item.rotations[i]);
        }
        out << "]\n";
      }
      if (!item.colors.empty()) {
        out << "      colors:\n";
        for (const auto& c : item.colors) {
          out << "      - !RGB {r: " << c.r << ", g: " << c.g << ", b: " << c.b << "}\n";
        }
      }
      if (!item.sizes.empty()) {
        out << "      sizes:\n";
        for (const auto& s : item.sizes) {
          out << "      - ";
          write_vec3(out, s);
          out << "\n";
        }
      }
    }
  }
  return out.str();
}

void save_config(const ArenaConfigDoc& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config file " + path.string());
  out << serialize_config(doc);
}

}  // namespace aai

#include "aai/protocol.hpp"

#include <openssl/evp.h>

#include <array>

namespace aai {

namespace {

constexpr std::array<std::string_view, 11> kTypeNames = {
    "hello", "hello-ack", "configure", "configure-ack", "reset", "step",
    "observation", "episode-end", "error", "bye", "world-summary",
};

void put_u32(std::vector<std::uint8_t>& out, std::size_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::size_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::size_t{b[at]} << 24) | (std::size_t{b[at + 1]} << 16) | (std::size_t{b[at + 2]} << 8) | b[at + 3];
}

void check_size(std::size_t n) {
  if (n > kMaxFrameBytes) throw ProtocolError(error_code::kMalformedFrame, "frame exceeds 64 MiB");
}

Message blank(MessageType t) {
  Message m;
  m.type = t;
  return m;
}

std::string dump(const nlohmann::json& j) { return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace); }

nlohmann::json envelope(const Message& m) {
  return {{"type", to_string(m.type)}, {"session", m.session}, {"payload", m.payload}};
}

nlohmann::json parse_body(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ProtocolError(error_code::kMalformedFrame, "invalid JSON body");
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ProtocolError(error_code::kMalformedFrame, "message body must be an object with a string type");
  }
  return j;
}

Message from_body(const nlohmann::json& j) {
  Message m;
  const auto type = parse_message_type(j["type"].get<std::string>());
  if (!type) throw ProtocolError(error_code::kUnknownType, "unknown message type '" + j["type"].get<std::string>() + "'");
  m.type = *type;
  if (j.contains("session")) {
    if (!j["session"].is_string()) throw ProtocolError(error_code::kMalformedFrame, "session must be a string");
    m.session = j["session"].get<std::string>();
  }
  if (j.contains("payload")) {
    if (!j["payload"].is_object()) throw ProtocolError(error_code::kMalformedFrame, "payload must be an object");
    m.payload = j["payload"];
  }
  return m;
}

}  // namespace

std::string_view to_string(MessageType t) { return kTypeNames[static_cast<std::size_t>(t)]; }

std::optional<MessageType> parse_message_type(std::string_view text) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == text) return static_cast<MessageType>(i);
  }
  return std::nullopt;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw ProtocolError(error_code::kMalformedFrame, "base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
  if (n < 0) throw ProtocolError(error_code::kMalformedFrame, "invalid base64");
  std::size_t len = static_cast<std::size_t>(n);
  if (!text.empty() && text.back() == '=') --len;
  if (text.size() > 1 && text[text.size() - 2] == '=') --len;
  out.resize(len);
  return out;
}

std::vector<std::uint8_t> encode_message(const Message& m, BlobEncoding enc) {
  nlohmann::json j = envelope(m);
  nlohmann::json blobs = nlohmann::json::array();
  for (const auto& b : m.blobs) {
    if (enc == BlobEncoding::kBase64) {
      blobs.push_back(base64_encode(b));
    } else {
      check_size(b.size());
      blobs.push_back(b.size());
    }
  }
  j["blobs"] = std::move(blobs);
  const std::string body = dump(j);
  check_size(body.size());
  std::vector<std::uint8_t> out;
  out.reserve(4 + body.size());
  put_u32(out, body.size());
  out.insert(out.end(), body.begin(), body.end());
  if (enc == BlobEncoding::kBinary) {
    for (const auto& b : m.blobs) {
      put_u32(out, b.size());
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  return out;
}

std::optional<Message> try_decode_message(std::span<const std::uint8_t> bytes, std::size_t& consumed) {
  consumed = 0;
  if (bytes.size() < 4) return std::nullopt;
  const std::size_t len = get_u32(bytes, 0);
  check_size(len);
  if (bytes.size() < 4 + len) return std::nullopt;
  const std::string_view text(reinterpret_cast<const char*>(bytes.data() + 4), len);
  const nlohmann::json j = parse_body(text);
  Message m;
  std::size_t at = 4 + len;
  if (j.contains("blobs")) {
    const auto& blobs = j["blobs"];
    if (!blobs.is_array()) throw ProtocolError(error_code::kMalformedFrame, "blobs must be a list");
    for (const auto& b : blobs) {
      if (b.is_string()) {
        m.blobs.push_back(base64_decode(b.get<std::string>()));
        continue;
      }
      if (!b.is_number_unsigned()) throw ProtocolError(error_code::kMalformedFrame, "blob entries must be sizes or base64");
      if (bytes.size() < at + 4) return std::nullopt;
      const std::size_t n = get_u32(bytes, at);
      check_size(n);
      if (n != b.get<std::size_t>()) throw ProtocolError(error_code::kMalformedFrame, "blob subframe size mismatch");
      if (bytes.size() < at + 4 + n) return std::nullopt;
      m.blobs.emplace_back(bytes.begin() + static_cast<std::ptrdiff_t>(at + 4),
                           bytes.begin() + static_cast<std::ptrdiff_t>(at + 4 + n));
      at += 4 + n;
    }
  }
  consumed = at;
  Message head = from_body(j);
  head.blobs = std::move(m.blobs);
  return head;
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  std::size_t used = 0;
  auto m = try_decode_message(bytes, used);
  if (!m) throw ProtocolError(error_code::kMalformedFrame, "truncated frame");
  if (used != bytes.size()) throw ProtocolError(error_code::kMalformedFrame, "trailing bytes after frame");
  return std::move(*m);
}

std::string encode_text(const Message& m) {
  nlohmann::json j = envelope(m);
  nlohmann::json blobs = nlohmann::json::array();
  for (const auto& b : m.blobs) blobs.push_back(base64_encode(b));
  j["blobs"] = std::move(blobs);
  return dump(j);
}

Message decode_text(std::string_view text) {
  check_size(text.size());
  const nlohmann::json j = parse_body(text);
  Message m = from_body(j);
  if (j.contains("blobs")) {
    if (!j["blobs"].is_array()) throw ProtocolError(error_code::kMalformedFrame, "blobs must be a list");
    for (const auto& b : j["blobs"]) {
      if (!b.is_string()) throw ProtocolError(error_code::kMalformedFrame, "text frames carry base64 blobs");
      m.blobs.push_back(base64_decode(b.get<std::string>()));
    }
  }
  return m;
}

Message make_hello(int resolution, std::uint64_t seed, bool play, std::string_view role) {
  Message m = blank(MessageType::kHello);
  m.payload = {{"version", kProtocolVersion}, {"resolution", resolution}, {"seed", seed}, {"role", role}};
  if (play) m.payload["play"] = true;
  return m;
}

Message make_configure(std::string_view config_text) {
  Message m = blank(MessageType::kConfigure);
  m.payload = {{"config", config_text}};
  return m;
}

Message make_reset(std::optional<std::uint64_t> seed) {
  Message m = blank(MessageType::kReset);
  if (seed) m.payload["seed"] = *seed;
  return m;
}

Message make_step(const std::map<int, Action>& actions) {
  Message m = blank(MessageType::kStep);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [arena, a] : actions) list.push_back({{"arena", arena}, {"move", a.move}, {"rotate", a.rotate}});
  m.payload = {{"actions", std::move(list)}};
  return m;
}

Message make_error(std::string_view code, std::string_view message) {
  Message m = blank(MessageType::kError);
  m.payload = {{"code", code}, {"message", message}};
  return m;
}

Message make_bye() { return blank(MessageType::kBye); }

Message make_observation(std::int64_t sequence, const std::map<int, ObservationBundle>& obs) {
  Message m = blank(MessageType::kObservation);
  nlohmann::json arenas = nlohmann::json::array();
  for (const auto& [index, o] : obs) {
    arenas.push_back({
        {"arena", index},
        {"resolution", o.frame.k},
        {"pixels", {{"blob", m.blobs.size()}}},
        {"velocity", {o.velocity.x, o.velocity.y, o.velocity.z}},
        {"reward", o.reward},
        {"done", o.done},
        {"cumulative", o.cumulative},
        {"lights", o.lights_on},
        {"info", {{"cause", to_string(o.cause)}, {"step", o.step}}},
    });
    m.blobs.push_back(o.frame.pixels);
  }
  m.payload = {{"sequence", sequence}, {"arenas", std::move(arenas)}, {"episode_ends", 0}};
  return m;
}

Message make_episode_end(int arena, const EpisodeState& state) {
  Message m = blank(MessageType::kEpisodeEnd);
  m.payload = {{"arena", arena}, {"cumulative", state.cumulative}, {"steps", state.step}, {"cause", to_string(state.cause)}};
  return m;
}

Message make_world_summary(int arena, const WorldState& world) {
  Message m = blank(MessageType::kWorldSummary);
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : world.objects) {
    objects.push_back({
        {"id", o.id},
        {"name", o.name()},
        {"position", {o.body.position.x, o.body.position.y, o.body.position.z}},
        {"yaw", o.body.yaw},
        {"size", {o.size.x, o.size.y, o.size.z}},
        {"color", {o.color.r, o.color.g, o.color.b}},
        {"sphere", o.entry->is_sphere()},
        {"zone", o.entry->is_zone()},
    });
  }
  const auto& a = world.agent.body;
  m.payload = {
      {"arena", arena},
      {"arena_size", kArenaSize},
      {"agent", {{"position", {a.position.x, a.position.y, a.position.z}}, {"yaw", a.yaw}, {"radius", kAgentRadius}}},
      {"objects", std::move(objects)},
  };
  return m;
}

std::map<int, Action> parse_step(const Message& m) {
  const auto& p = m.payload;
  if (!p.contains("actions") || !p["actions"].is_array()) {
    throw ProtocolError(error_code::kBadRequest, "step payload needs an actions list");
  }
  std::map<int, Action> out;
  for (const auto& a : p["actions"]) {
    if (!a.is_object() || !a.contains("arena") || !a["arena"].is_number_integer()) {
      throw ProtocolError(error_code::kBadRequest, "each action needs an integer arena");
    }
    const auto field = [&](const char* key) {
      if (!a.contains(key)) return 0;
      if (!a[key].is_number_integer()) throw ProtocolError(error_code::kInvalidAction, std::string(key) + " must be an integer");
      const auto v = a[key].get<std::int64_t>();
      if (v < 0 || v > 2) throw ProtocolError(error_code::kInvalidAction, std::string(key) + " must be 0, 1 or 2");
      return static_cast<int>(v);
    };
    const int arena = a["arena"].get<int>();
    if (out.contains(arena)) throw ProtocolError(error_code::kBadRequest, "duplicate action for one arena");
    out[arena] = Action{field("move"), field("rotate")};
  }
  return out;
}

std::map<int, ObservationBundle> parse_observation(const Message& m) {
  std::map<int, ObservationBundle> out;
  try {
    for (const auto& a : m.payload.at("arenas")) {
      ObservationBundle o;
      o.frame.k = a.at("resolution").get<int>();
      const auto blob = a.at("pixels").at("blob").get<std::size_t>();
      if (blob >= m.blobs.size()) throw ProtocolError(error_code::kMalformedFrame, "pixel blob index out of range");
      o.frame.pixels = m.blobs[blob];
      if (o.frame.pixels.size() != static_cast<std::size_t>(o.frame.k) * o.frame.k * 3) {
        throw ProtocolError(error_code::kMalformedFrame, "pixel blob size does not match resolution");
      }
      const auto& v = a.at("velocity");
      o.velocity = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
      o.reward = a.at("reward").get<double>();
      o.done = a.at("done").get<bool>();
      o.cumulative = a.value("cumulative", 0.0);
      o.lights_on = a.value("lights", true);
      const auto& info = a.at("info");
      o.step = info.at("step").get<int>();
      const std::string cause = info.value("cause", "none");
      for (auto c : {TerminationCause::kNone, TerminationCause::kGoodGoal, TerminationCause::kBadGoal,
                     TerminationCause::kDeathZone, TerminationCause::kMultiComplete, TerminationCause::kTimeLimit}) {
        if (to_string(c) == cause) o.cause = c;
      }
      out[a.at("arena").get<int>()] = std::move(o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(error_code::kMalformedFrame, std::string("bad observation payload: ") + e.what());
  }
  return out;
}

}  // namespace aai

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aai/episode.hpp"

namespace aai {

inline constexpr std::string_view kProtocolVersion = "AAIP/1";
inline constexpr std::size_t kMaxFrameBytes = std::size_t{64} << 20;

enum class MessageType {
  kHello,
  kHelloAck,
  kConfigure,
  kConfigureAck,
  kReset,
  kStep,
  kObservation,
  kEpisodeEnd,
  kError,
  kBye,
  kWorldSummary,
};

std::string_view to_string(MessageType t);
std::optional<MessageType> parse_message_type(std::string_view text);

namespace error_code {
inline constexpr std::string_view kNotConfigured = "not-configured";
inline constexpr std::string_view kVersionMismatch = "version-mismatch";
inline constexpr std::string_view kMalformedFrame = "malformed-frame";
inline constexpr std::string_view kBadRequest = "bad-request";
inline constexpr std::string_view kOutOfOrder = "out-of-order";
inline constexpr std::string_view kUnknownType = "unknown-type";
inline constexpr std::string_view kInvalidAction = "invalid-action";
inline constexpr std::string_view kNotPlayMode = "not-play-mode";
inline constexpr std::string_view kServerBusy = "server-busy";
}  // namespace error_code

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::string_view code, const std::string& what) : std::runtime_error(what), code_(code) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Binary payloads (pixel frames) are referenced from the JSON payload as
/// {"blob": i} and carried beside it.
struct Message {
  MessageType type = MessageType::kBye;
  std::string session;
  nlohmann::json payload = nlohmann::json::object();
  std::vector<std::vector<std::uint8_t>> blobs;

  bool operator==(const Message&) const = default;
};

enum class BlobEncoding { kBinary, kBase64 };

/// 4-byte big-endian length + UTF-8 JSON body. Binary encoding appends one
/// length-prefixed subframe per blob; base64 inlines them in the body.
std::vector<std::uint8_t> encode_message(const Message& m, BlobEncoding enc = BlobEncoding::kBinary);

/// Decodes exactly one complete frame; trailing or missing bytes are errors.
Message decode_message(std::span<const std::uint8_t> bytes);

/// Incremental form: nullopt while the frame is incomplete.
std::optional<Message> try_decode_message(std::span<const std::uint8_t> bytes, std::size_t& consumed);

/// JSON text form with base64 blobs (one WebSocket text message).
std::string encode_text(const Message& m);
Message decode_text(std::string_view text);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

// Payload builders.
Message make_hello(int resolution, std::uint64_t seed, bool play = false, std::string_view role = "agent");
Message make_configure(std::string_view config_text);
Message make_reset(std::optional<std::uint64_t> seed = std::nullopt);
Message make_step(const std::map<int, Action>& actions);
Message make_error(std::string_view code, std::string_view message);
Message make_bye();
Message make_observation(std::int64_t sequence, const std::map<int, ObservationBundle>& obs);
Message make_episode_end(int arena, const EpisodeState& state);
Message make_world_summary(int arena, const WorldState& world);

std::map<int, Action> parse_step(const Message& m);
std::map<int, ObservationBundle> parse_observation(const Message& m);

}  // namespace aai

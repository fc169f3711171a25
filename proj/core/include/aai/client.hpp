#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aai/protocol.hpp"
#include "aai/socket.hpp"

namespace aai {

struct StepReply {
  std::map<int, ObservationBundle> observations;
  std::vector<Message> episode_ends;
  std::vector<Message> summaries;  // play sessions only
  Message raw;                     // the observation message itself
};

/// Blocking client for an environment server.
class Client {
 public:
  explicit Client(std::unique_ptr<Channel> channel);

  static Client tcp(const std::string& host, int port);
  static Client websocket(const std::string& host, int port);

  void send(const Message& m) { channel_->send(m); }
  /// Throws ConnectError if the server closed the stream.
  Message receive();

  /// Returns the hello-ack; server errors are rethrown as ProtocolError.
  Message hello(int resolution, std::uint64_t seed, bool play = false, bool base64 = false);
  Message configure(const std::string& config_text);
  StepReply reset(std::optional<std::uint64_t> seed = std::nullopt);
  StepReply step(const std::map<int, Action>& actions);
  void bye();

  const std::string& session() const { return session_; }

 private:
  StepReply read_observation();
  Message expect(MessageType type);

  std::unique_ptr<Channel> channel_;
  std::string session_;
};

}  // namespace aai

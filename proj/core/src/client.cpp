#include "aai/client.hpp"

#include <fmt/format.h>

#include "aai/websocket.hpp"

namespace aai {

Client::Client(std::unique_ptr<Channel> channel) : channel_(std::move(channel)) {}

Client Client::tcp(const std::string& host, int port) {
  return Client(std::make_unique<TcpChannel>(connect_tcp(host, port)));
}

Client Client::websocket(const std::string& host, int port) { return Client(connect_websocket(host, port)); }

Message Client::receive() {
  auto m = channel_->receive();
  if (!m) throw ConnectError("server closed the connection");
  return std::move(*m);
}

Message Client::expect(MessageType type) {
  Message m = receive();
  if (m.type == MessageType::kError) {
    throw ProtocolError(m.payload.value("code", std::string(error_code::kBadRequest)),
                        m.payload.value("message", std::string("server error")));
  }
  if (m.type != type) {
    throw ProtocolError(error_code::kOutOfOrder, fmt::format("expected {}, got {}", to_string(type), to_string(m.type)));
  }
  return m;
}

Message Client::hello(int resolution, std::uint64_t seed, bool play, bool base64) {
  Message m = make_hello(resolution, seed, play);
  if (base64) m.payload["blobs"] = "base64";
  send(m);
  Message ack = expect(MessageType::kHelloAck);
  session_ = ack.payload.value("session", std::string());
  return ack;
}

Message Client::configure(const std::string& config_text) {
  send(make_configure(config_text));
  return expect(MessageType::kConfigureAck);
}

StepReply Client::read_observation() {
  StepReply r;
  r.raw = expect(MessageType::kObservation);
  r.observations = parse_observation(r.raw);
  const auto ends = r.raw.payload.value("episode_ends", std::size_t{0});
  for (std::size_t i = 0; i < ends; ++i) r.episode_ends.push_back(expect(MessageType::kEpisodeEnd));
  const auto summaries = r.raw.payload.value("summaries", std::size_t{0});
  for (std::size_t i = 0; i < summaries; ++i) r.summaries.push_back(expect(MessageType::kWorldSummary));
  return r;
}

StepReply Client::reset(std::optional<std::uint64_t> seed) {
  send(make_reset(seed));
  return read_observation();
}

StepReply Client::step(const std::map<int, Action>& actions) {
  send(make_step(actions));
  return read_observation();
}

void Client::bye() {
  send(make_bye());
  expect(MessageType::kBye);
}

}  // namespace aai

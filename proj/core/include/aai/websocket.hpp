#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aai/socket.hpp"

namespace aai {

namespace ws_opcode {
inline constexpr int kContinuation = 0x0;
inline constexpr int kText = 0x1;
inline constexpr int kBinary = 0x2;
inline constexpr int kClose = 0x8;
inline constexpr int kPing = 0x9;
inline constexpr int kPong = 0xA;
}  // namespace ws_opcode

struct WsFrame {
  bool fin = true;
  int opcode = ws_opcode::kText;
  std::vector<std::uint8_t> payload;
};

/// Clients mask their frames, servers do not.
std::vector<std::uint8_t> encode_ws_frame(const WsFrame& f, std::optional<std::uint32_t> mask = std::nullopt);
/// nullopt while incomplete; ProtocolError on a bad header.
std::optional<WsFrame> try_decode_ws_frame(std::span<const std::uint8_t> bytes, std::size_t& consumed);

/// Sec-WebSocket-Accept value for a client key.
std::string ws_accept_key(std::string_view client_key);

/// Reads the HTTP upgrade request (after any bytes already in `buffer`)
/// and answers it. Leftover bytes stay in `buffer`.
void ws_server_handshake(Socket& socket, std::vector<std::uint8_t>& buffer);
void ws_client_handshake(Socket& socket, const std::string& host, int port, std::vector<std::uint8_t>& buffer);

/// One protocol message per WebSocket text message. Binary messages carrying
/// a length-prefixed frame are accepted as well.
class WebSocketChannel : public Channel {
 public:
  WebSocketChannel(Socket socket, bool client_side, std::vector<std::uint8_t> pending = {});

  void send(const Message& m) override;
  std::optional<Message> receive() override;
  void shutdown() override { socket_.shutdown(); }

  void send_frame(const WsFrame& f);
  /// Next complete frame (control frames included); nullopt at end of stream.
  std::optional<WsFrame> read_frame();

 private:
  Socket socket_;
  bool client_;
  std::vector<std::uint8_t> buffer_;
  std::uint32_t mask_state_ = 0x9e3779b9u;
};

std::unique_ptr<WebSocketChannel> connect_websocket(const std::string& host, int port);

}  // namespace aai

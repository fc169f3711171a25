#include "aai/websocket.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace aai {

namespace {

constexpr std::string_view kGuid = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";
constexpr std::size_t kMaxHeaderBytes = 16384;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

struct HttpHead {
  std::string start_line;
  std::map<std::string, std::string> headers;  // lower-case names
};

HttpHead read_head(Socket& socket, std::vector<std::uint8_t>& buffer) {
  constexpr std::array<std::uint8_t, 4> kEnd = {'\r', '\n', '\r', '\n'};
  for (;;) {
    const auto it = std::search(buffer.begin(), buffer.end(), kEnd.begin(), kEnd.end());
    if (it != buffer.end()) {
      const std::string text(buffer.begin(), it);
      buffer.erase(buffer.begin(), it + 4);
      HttpHead head;
      std::size_t at = 0;
      bool first = true;
      while (at <= text.size()) {
        std::size_t eol = text.find("\r\n", at);
        if (eol == std::string::npos) eol = text.size();
        const std::string_view line(text.data() + at, eol - at);
        if (first) {
          head.start_line = std::string(line);
          first = false;
        } else if (const auto colon = line.find(':'); colon != std::string_view::npos) {
          head.headers[lower(trim(line.substr(0, colon)))] = trim(line.substr(colon + 1));
        }
        at = eol + 2;
      }
      return head;
    }
    if (buffer.size() > kMaxHeaderBytes) throw ProtocolError(error_code::kMalformedFrame, "HTTP header too large");
    if (socket.recv_some(buffer, 4096) == 0) throw ProtocolError(error_code::kMalformedFrame, "connection closed during handshake");
  }
}

bool header_has_token(const HttpHead& h, const std::string& name, std::string_view token) {
  const auto it = h.headers.find(name);
  return it != h.headers.end() && lower(it->second).find(token) != std::string::npos;
}

}  // namespace

std::vector<std::uint8_t> encode_ws_frame(const WsFrame& f, std::optional<std::uint32_t> mask) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>((f.fin ? 0x80 : 0x00) | (f.opcode & 0x0f)));
  const std::uint8_t mask_bit = mask ? 0x80 : 0x00;
  const std::size_t n = f.payload.size();
  if (n < 126) {
    out.push_back(static_cast<std::uint8_t>(mask_bit | n));
  } else if (n <= 0xffff) {
    out.push_back(mask_bit | 126);
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(n));
  } else {
    out.push_back(mask_bit | 127);
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(n) >> (8 * i)));
  }
  std::array<std::uint8_t, 4> key{};
  if (mask) {
    for (int i = 0; i < 4; ++i) key[i] = static_cast<std::uint8_t>(*mask >> (24 - 8 * i));
    out.insert(out.end(), key.begin(), key.end());
  }
  const std::size_t at = out.size();
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  if (mask) {
    for (std::size_t i = 0; i < n; ++i) out[at + i] ^= key[i % 4];
  }
  return out;
}

std::optional<WsFrame> try_decode_ws_frame(std::span<const std::uint8_t> b, std::size_t& consumed) {
  consumed = 0;
  if (b.size() < 2) return std::nullopt;
  WsFrame f;
  f.fin = (b[0] & 0x80) != 0;
  if (b[0] & 0x70) throw ProtocolError(error_code::kMalformedFrame, "reserved WebSocket bits set");
  f.opcode = b[0] & 0x0f;
  const bool masked = (b[1] & 0x80) != 0;
  std::uint64_t n = b[1] & 0x7f;
  std::size_t at = 2;
  if (n == 126) {
    if (b.size() < 4) return std::nullopt;
    n = (std::uint64_t{b[2]} << 8) | b[3];
    at = 4;
  } else if (n == 127) {
    if (b.size() < 10) return std::nullopt;
    n = 0;
    for (int i = 0; i < 8; ++i) n = (n << 8) | b[2 + i];
    at = 10;
  }
  if (n > kMaxFrameBytes) throw ProtocolError(error_code::kMalformedFrame, "WebSocket frame exceeds 64 MiB");
  std::array<std::uint8_t, 4> key{};
  if (masked) {
    if (b.size() < at + 4) return std::nullopt;
    std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(at), 4, key.begin());
    at += 4;
  }
  if (b.size() < at + n) return std::nullopt;
  f.payload.assign(b.begin() + static_cast<std::ptrdiff_t>(at), b.begin() + static_cast<std::ptrdiff_t>(at + n));
  if (masked) {
    for (std::size_t i = 0; i < f.payload.size(); ++i) f.payload[i] ^= key[i % 4];
  }
  consumed = at + static_cast<std::size_t>(n);
  return f;
}

std::string ws_accept_key(std::string_view client_key) {
  const std::string input = std::string(client_key) + std::string(kGuid);
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(input.data(), input.size(), digest.data(), &len, EVP_sha1(), nullptr);
  return base64_encode(std::span<const std::uint8_t>(digest.data(), len));
}

void ws_server_handshake(Socket& socket, std::vector<std::uint8_t>& buffer) {
  const HttpHead head = read_head(socket, buffer);
  const auto key = head.headers.find("sec-websocket-key");
  if (head.start_line.rfind("GET ", 0) != 0 || !header_has_token(head, "upgrade", "websocket") ||
      key == head.headers.end()) {
    socket.send_all(std::string_view("HTTP/1.1 400 Bad Request\r\nContent-Length: 0\r\nConnection: close\r\n\r\n"));
    throw ProtocolError(error_code::kMalformedFrame, "not a WebSocket upgrade request");
  }
  const std::string reply = "HTTP/1.1 101 Switching Protocols\r\nUpgrade: websocket\r\nConnection: Upgrade\r\n"
                            "Sec-WebSocket-Accept: " + ws_accept_key(key->second) + "\r\n\r\n";
  socket.send_all(reply);
}

void ws_client_handshake(Socket& socket, const std::string& host, int port, std::vector<std::uint8_t>& buffer) {
  const std::string key = "dGhlIHNhbXBsZSBub25jZQ==";
  const std::string request = "GET / HTTP/1.1\r\nHost: " + host + ":" + std::to_string(port) +
                              "\r\nUpgrade: websocket\r\nConnection: Upgrade\r\nSec-WebSocket-Key: " + key +
                              "\r\nSec-WebSocket-Version: 13\r\n\r\n";
  socket.send_all(request);
  const HttpHead head = read_head(socket, buffer);
  const auto accept = head.headers.find("sec-websocket-accept");
  if (head.start_line.find(" 101") == std::string::npos || accept == head.headers.end() ||
      accept->second != ws_accept_key(key)) {
    throw ConnectError("WebSocket upgrade rejected: " + head.start_line);
  }
}

WebSocketChannel::WebSocketChannel(Socket socket, bool client_side, std::vector<std::uint8_t> pending)
    : socket_(std::move(socket)), client_(client_side), buffer_(std::move(pending)) {}

void WebSocketChannel::send_frame(const WsFrame& f) {
  std::optional<std::uint32_t> mask;
  if (client_) {
    mask_state_ = mask_state_ * 1664525u + 1013904223u;
    mask = mask_state_;
  }
  socket_.send_all(encode_ws_frame(f, mask));
}

std::optional<WsFrame> WebSocketChannel::read_frame() {
  for (;;) {
    std::size_t used = 0;
    if (auto f = try_decode_ws_frame(buffer_, used)) {
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(used));
      return f;
    }
    if (socket_.recv_some(buffer_) == 0) {
      if (buffer_.empty()) return std::nullopt;
      buffer_.clear();
      throw ProtocolError(error_code::kMalformedFrame, "connection closed inside a WebSocket frame");
    }
  }
}

void WebSocketChannel::send(const Message& m) {
  const std::string text = encode_text(m);
  WsFrame f;
  f.opcode = ws_opcode::kText;
  f.payload.assign(text.begin(), text.end());
  send_frame(f);
}

std::optional<Message> WebSocketChannel::receive() {
  std::vector<std::uint8_t> data;
  int opcode = -1;
  for (;;) {
    auto f = read_frame();
    if (!f) return std::nullopt;
    switch (f->opcode) {
      case ws_opcode::kPing:
        send_frame({true, ws_opcode::kPong, f->payload});
        continue;
      case ws_opcode::kPong:
        continue;
      case ws_opcode::kClose:
        send_frame({true, ws_opcode::kClose, {}});
        return std::nullopt;
      case ws_opcode::kText:
      case ws_opcode::kBinary:
        if (opcode != -1) throw ProtocolError(error_code::kMalformedFrame, "new message inside a fragmented one");
        opcode = f->opcode;
        break;
      case ws_opcode::kContinuation:
        if (opcode == -1) throw ProtocolError(error_code::kMalformedFrame, "continuation without a message");
        break;
      default:
        throw ProtocolError(error_code::kMalformedFrame, "unknown WebSocket opcode");
    }
    data.insert(data.end(), f->payload.begin(), f->payload.end());
    if (data.size() > kMaxFrameBytes) throw ProtocolError(error_code::kMalformedFrame, "WebSocket message exceeds 64 MiB");
    if (f->fin) break;
  }
  if (opcode == ws_opcode::kBinary) return decode_message(data);
  return decode_text(std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

std::unique_ptr<WebSocketChannel> connect_websocket(const std::string& host, int port) {
  Socket s = connect_tcp(host, port);
  std::vector<std::uint8_t> buffer;
  ws_client_handshake(s, host, port, buffer);
  return std::make_unique<WebSocketChannel>(std::move(s), true, std::move(buffer));
}

}  // namespace aai

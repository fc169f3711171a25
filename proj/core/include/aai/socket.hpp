#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aai/protocol.hpp"

namespace aai {

class ConnectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Owning TCP socket handle.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  Socket& operator=(Socket&& o) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close(); }

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

  void send_all(std::span<const std::uint8_t> bytes);
  void send_all(std::string_view text);
  /// Appends up to `max` bytes; returns 0 at end of stream.
  std::size_t recv_some(std::vector<std::uint8_t>& buffer, std::size_t max = 65536);
  /// Unblocks pending reads from another thread.
  void shutdown();
  void close();

 private:
  int fd_ = -1;
};

Socket connect_tcp(const std::string& host, int port);

class Listener {
 public:
  /// Port 0 picks an ephemeral port.
  explicit Listener(int port, const std::string& host = "127.0.0.1");
  int port() const { return port_; }
  /// Waits up to `timeout_ms`; nullopt on timeout or after close().
  std::optional<Socket> accept(int timeout_ms);
  void close() { socket_.close(); }

 private:
  Socket socket_;
  int port_ = 0;
};

/// A bidirectional message stream.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const Message& m) = 0;
  /// nullopt on orderly close; ProtocolError on a bad frame.
  virtual std::optional<Message> receive() = 0;
  virtual void shutdown() = 0;
};

/// Length-prefixed frames over raw TCP.
class TcpChannel : public Channel {
 public:
  explicit TcpChannel(Socket socket, std::vector<std::uint8_t> pending = {});

  void send(const Message& m) override;
  std::optional<Message> receive() override;
  void shutdown() override { socket_.shutdown(); }

  void set_encoding(BlobEncoding enc) { encoding_ = enc; }

 private:
  Socket socket_;
  std::vector<std::uint8_t> buffer_;
  BlobEncoding encoding_ = BlobEncoding::kBinary;
};

}  // namespace aai

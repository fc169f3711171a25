#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aai/episode.hpp"
#include "aai/protocol.hpp"
#include "aai/socket.hpp"

namespace aai {

/// Transport-independent state machine for one connection.
class Session {
 public:
  explicit Session(std::string id, PhysicsParams physics = {});

  /// Replies to one inbound message, in send order.
  std::vector<Message> handle(const Message& in);
  /// Reply for a frame that failed to decode.
  std::vector<Message> handle_decode_error(const ProtocolError& e);

  bool closed() const { return closed_; }
  const std::string& id() const { return id_; }
  BlobEncoding blob_encoding() const { return encoding_; }

 private:
  std::vector<Message> on_hello(const Message& in);
  std::vector<Message> on_configure(const Message& in);
  std::vector<Message> on_reset(const Message& in);
  std::vector<Message> on_step(const Message& in);
  std::vector<Message> on_world_summary(const Message& in);
  void append_summaries(std::vector<Message>& out) const;

  std::string id_;
  PhysicsParams physics_;
  bool greeted_ = false;
  bool play_ = false;
  bool closed_ = false;
  int resolution_ = 84;
  std::uint64_t seed_ = 0;
  BlobEncoding encoding_ = BlobEncoding::kBinary;
  std::optional<ArenaConfigDoc> doc_;
  std::unique_ptr<Environment> env_;
  bool episode_live_ = false;
  bool first_reset_ = true;
  std::int64_t sequence_ = 0;
};

/// Drives a session over a channel until either side closes.
void serve_channel(Channel& channel, Session& session);

struct ServerOptions {
  int port = 0;
  std::string host = "127.0.0.1";
  int max_sessions = 16;
  PhysicsParams physics;
};

/// Accepts raw TCP and WebSocket clients on one port; the first bytes of a
/// connection select the transport.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  void start();
  void stop();
  /// Blocks until stop() is called from elsewhere.
  void wait();
  int port() const { return port_; }
  int active_sessions() const { return active_.load(); }

 private:
  struct Connection {
    std::thread worker;
    int fd = -1;  // guarded by mutex_; -1 once the worker has closed it
    bool busy = false;
    std::atomic<bool> finished{false};
  };

  void accept_loop();
  void run_connection(Connection& c, Socket socket);
  void reap(bool all);

  ServerOptions options_;
  std::unique_ptr<Listener> listener_;
  int port_ = 0;
  std::thread acceptor_;
  std::atomic<bool> stopping_{false};
  std::atomic<int> active_{0};
  std::uint64_t next_id_ = 0;
  std::mutex mutex_;
  std::list<Connection> connections_;
};

}  // namespace aai

#include "aai/server.hpp"

#include <sys/socket.h>

#include <fmt/format.h>

#include "aai/config_io.hpp"
#include "aai/validate.hpp"
#include "aai/websocket.hpp"

namespace aai {

namespace {

std::vector<Message> reply(Message m) {
  std::vector<Message> out;
  out.push_back(std::move(m));
  return out;
}

std::vector<Message> error_reply(std::string_view code, std::string_view message) {
  return reply(make_error(code, message));
}

}  // namespace

Session::Session(std::string id, PhysicsParams physics) : id_(std::move(id)), physics_(physics) {}

std::vector<Message> Session::handle_decode_error(const ProtocolError& e) {
  if (e.code() != error_code::kUnknownType) closed_ = true;
  return error_reply(e.code(), e.what());
}

std::vector<Message> Session::handle(const Message& in) {
  if (closed_) return {};
  try {
    if (in.type == MessageType::kBye) {
      closed_ = true;
      return reply(make_bye());
    }
    if (in.type == MessageType::kHello) return on_hello(in);
    if (!greeted_) return error_reply(error_code::kOutOfOrder, "the first message must be hello");
    switch (in.type) {
      case MessageType::kConfigure:
        return on_configure(in);
      case MessageType::kReset:
        return on_reset(in);
      case MessageType::kStep:
        return on_step(in);
      case MessageType::kWorldSummary:
        return on_world_summary(in);
      default:
        return error_reply(error_code::kBadRequest, fmt::format("clients may not send {}", to_string(in.type)));
    }
  } catch (const ProtocolError& e) {
    return error_reply(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_reply(error_code::kBadRequest, e.what());
  }
}

std::vector<Message> Session::on_hello(const Message& in) {
  if (greeted_) return error_reply(error_code::kOutOfOrder, "hello already received");
  const auto& p = in.payload;
  const std::string version = p.contains("version") && p["version"].is_string() ? p["version"].get<std::string>() : "";
  if (version != kProtocolVersion) {
    closed_ = true;
    return error_reply(error_code::kVersionMismatch,
                       fmt::format("server speaks {}, client asked for '{}'", kProtocolVersion, version));
  }
  const std::string role = p.value("role", std::string("agent"));
  if (role != "agent") return error_reply(error_code::kBadRequest, "this endpoint serves environments; role must be agent");
  resolution_ = p.value("resolution", 84);
  try {
    check_resolution(resolution_);
  } catch (const ResolutionError& e) {
    return error_reply(error_code::kBadRequest, e.what());
  }
  seed_ = p.value("seed", std::uint64_t{0});
  play_ = p.value("play", false);
  const std::string blobs = p.value("blobs", std::string("binary"));
  if (blobs != "binary" && blobs != "base64") return error_reply(error_code::kBadRequest, "blobs must be binary or base64");
  encoding_ = blobs == "base64" ? BlobEncoding::kBase64 : BlobEncoding::kBinary;
  greeted_ = true;
  env_ = std::make_unique<Environment>(resolution_, physics_);

  Message ack;
  ack.type = MessageType::kHelloAck;
  ack.session = id_;
  ack.payload = {{"version", kProtocolVersion}, {"session", id_}, {"resolution", resolution_}, {"seed", seed_},
                 {"play", play_}, {"blobs", blobs}};
  return reply(std::move(ack));
}

std::vector<Message> Session::on_configure(const Message& in) {
  const auto& p = in.payload;
  if (!p.contains("config") || !p["config"].is_string()) {
    return error_reply(error_code::kBadRequest, "configure needs the config document as a string");
  }
  ArenaConfigDoc doc;
  try {
    doc = parse_config(p["config"].get<std::string>());
  } catch (const ParseError& e) {
    return error_reply(error_code::kBadRequest, e.what());
  }
  const auto violations = validate_config(doc);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) list.push_back(to_json(v));
  if (has_errors(violations)) {
    Message err = make_error(error_code::kBadRequest, "config has validation errors");
    err.payload["violations"] = std::move(list);
    return reply(std::move(err));
  }
  doc_ = std::move(doc);
  episode_live_ = false;
  nlohmann::json arenas = nlohmann::json::array();
  for (const auto& [index, spec] : doc_->arenas) arenas.push_back(index);
  Message ack;
  ack.type = MessageType::kConfigureAck;
  ack.payload = {{"arenas", std::move(arenas)}, {"warnings", std::move(list)}};
  return reply(std::move(ack));
}

std::vector<Message> Session::on_reset(const Message& in) {
  if (!doc_) return error_reply(error_code::kNotConfigured, "reset before configure");
  std::optional<std::uint64_t> seed;
  if (in.payload.contains("seed")) {
    if (!in.payload["seed"].is_number_unsigned()) return error_reply(error_code::kBadRequest, "seed must be a non-negative integer");
    seed = in.payload["seed"].get<std::uint64_t>();
  } else if (first_reset_) {
    seed = seed_;
  }
  const bool fresh_doc = !env_->configured() || !(env_->doc() == *doc_);
  auto obs = fresh_doc ? env_->reset(*doc_, seed) : env_->reset(std::nullopt, seed);
  first_reset_ = false;
  episode_live_ = true;
  Message m = make_observation(sequence_++, obs);
  if (play_) m.payload["summaries"] = env_->arenas().size();
  std::vector<Message> out = reply(std::move(m));
  append_summaries(out);
  return out;
}

std::vector<Message> Session::on_step(const Message& in) {
  if (!doc_) return error_reply(error_code::kNotConfigured, "step before configure");
  if (!episode_live_) return error_reply(error_code::kOutOfOrder, "step before reset");
  const auto actions = parse_step(in);
  std::map<int, bool> was_done;
  for (const auto& [arena, a] : actions) {
    try {
      was_done[arena] = env_->state(arena).done;
    } catch (const std::out_of_range&) {
      return error_reply(error_code::kBadRequest, fmt::format("no arena {}", arena));
    }
  }
  std::map<int, ObservationBundle> obs;
  try {
    obs = env_->step(actions);
  } catch (const InvalidActionError& e) {
    return error_reply(error_code::kInvalidAction, e.what());
  }
  std::vector<Message> ends;
  for (const auto& [arena, o] : obs) {
    if (o.done && !was_done[arena]) ends.push_back(make_episode_end(arena, env_->state(arena)));
  }
  Message m = make_observation(sequence_++, obs);
  m.payload["episode_ends"] = ends.size();
  if (play_) m.payload["summaries"] = env_->arenas().size();
  std::vector<Message> out = reply(std::move(m));
  for (auto& e : ends) out.push_back(std::move(e));
  append_summaries(out);
  return out;
}

std::vector<Message> Session::on_world_summary(const Message&) {
  if (!play_) return error_reply(error_code::kNotPlayMode, "world-summary is only served to play sessions");
  if (!episode_live_) return error_reply(error_code::kOutOfOrder, "no world yet; send reset");
  std::vector<Message> out;
  append_summaries(out);
  return out;
}

void Session::append_summaries(std::vector<Message>& out) const {
  if (!play_ || !env_ || !env_->configured()) return;
  for (int arena : env_->arenas()) out.push_back(make_world_summary(arena, env_->world(arena)));
}

void serve_channel(Channel& channel, Session& session) {
  auto* tcp = dynamic_cast<TcpChannel*>(&channel);
  while (!session.closed()) {
    std::vector<Message> out;
    try {
      auto in = channel.receive();
      if (!in) return;
      out = session.handle(*in);
    } catch (const ProtocolError& e) {
      out = session.handle_decode_error(e);
    }
    if (tcp) tcp->set_encoding(session.blob_encoding());
    for (const auto& m : out) channel.send(m);
  }
}

Server::Server(ServerOptions options) : options_(std::move(options)) {}

Server::~Server() { stop(); }

void Server::start() {
  listener_ = std::make_unique<Listener>(options_.port, options_.host);
  port_ = listener_->port();
  stopping_ = false;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::stop() {
  stopping_ = true;
  if (acceptor_.joinable()) acceptor_.join();
  {
    std::lock_guard lock(mutex_);
    for (auto& c : connections_) {
      if (c.fd >= 0) ::shutdown(c.fd, SHUT_RDWR);
    }
  }
  reap(true);
  if (listener_) listener_->close();
}

void Server::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

void Server::accept_loop() {
  while (!stopping_) {
    auto socket = listener_->accept(100);
    reap(false);
    if (!socket) continue;
    std::lock_guard lock(mutex_);
    auto& c = connections_.emplace_back();
    c.fd = socket->fd();
    c.busy = active_.load() >= options_.max_sessions;
    ++active_;
    c.worker = std::thread([this, &c, s = std::move(*socket)]() mutable { run_connection(c, std::move(s)); });
  }
}

void Server::run_connection(Connection& c, Socket socket) {
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = fmt::format("s{}", ++next_id_);
  }
  std::unique_ptr<Channel> channel;
  try {
    std::vector<std::uint8_t> head;
    while (head.size() < 4 && socket.recv_some(head, 4 - head.size()) > 0) {
    }
    if (head.size() >= 4 && std::string_view(reinterpret_cast<const char*>(head.data()), 4) == "GET ") {
      ws_server_handshake(socket, head);
      channel = std::make_unique<WebSocketChannel>(std::move(socket), false, std::move(head));
    } else if (!head.empty()) {
      channel = std::make_unique<TcpChannel>(std::move(socket), std::move(head));
    }
    if (channel) {
      if (c.busy) {
        channel->send(make_error(error_code::kServerBusy, "session limit reached"));
      } else {
        Session session(id, options_.physics);
        serve_channel(*channel, session);
      }
    }
  } catch (const std::exception&) {
    // peer vanished or sent an unusable handshake
  }
  {
    std::lock_guard lock(mutex_);
    c.fd = -1;
    channel.reset();
    socket.close();
  }
  --active_;
  c.finished = true;
}

void Server::reap(bool all) {
  std::list<Connection> done;
  {
    std::lock_guard lock(mutex_);
    for (auto it = connections_.begin(); it != connections_.end();) {
      auto next = std::next(it);
      if (all || it->finished) done.splice(done.end(), connections_, it);
      it = next;
    }
  }
  for (auto& c : done) {
    if (c.worker.joinable()) c.worker.join();
  }
}

}  // namespace aai

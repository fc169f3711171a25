#include "aai/agents.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include <fmt/format.h>

namespace aai {

Action RandomAgent::act(const ObservationBundle&) {
  const auto v = static_cast<int>(rng_.uniform_int(0, 8));
  return {v / 3, v % 3};
}

PixelClass classify_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  if (g > 80 && g > 2 * r && g > 2 * b) return PixelClass::kGreen;
  if (r > 80 && g >= 0.7 * r && g <= 0.86 * r && b < 0.3 * r) return PixelClass::kGold;
  if (r > 80 && g < 0.25 * r && b < 0.25 * r) return PixelClass::kRed;
  return PixelClass::kOther;
}

std::optional<Blob> largest_blob(const Frame& frame, bool (*want)(PixelClass)) {
  const int k = frame.k;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k * k; ++i) {
    const auto* p = &frame.pixels[static_cast<std::size_t>(i) * 3];
    mask[static_cast<std::size_t>(i)] = want(classify_pixel(p[0], p[1], p[2])) ? 1 : 0;
  }
  std::optional<Blob> best;
  std::deque<int> queue;
  for (int start = 0; start < k * k; ++start) {
    if (mask[static_cast<std::size_t>(start)] != 1) continue;
    Blob blob;
    double rows = 0.0;
    double cols = 0.0;
    mask[static_cast<std::size_t>(start)] = 2;
    queue.push_back(start);
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      const int r = i / k;
      const int c = i % k;
      ++blob.pixels;
      rows += r;
      cols += c;
      const int nbr[4] = {r > 0 ? i - k : -1, r + 1 < k ? i + k : -1, c > 0 ? i - 1 : -1, c + 1 < k ? i + 1 : -1};
      for (int j : nbr) {
        if (j >= 0 && mask[static_cast<std::size_t>(j)] == 1) {
          mask[static_cast<std::size_t>(j)] = 2;
          queue.push_back(j);
        }
      }
    }
    blob.row = rows / blob.pixels;
    blob.col = cols / blob.pixels;
    if (!best || blob.pixels > best->pixels) best = blob;
  }
  return best;
}

namespace {

bool is_food(PixelClass c) { return c == PixelClass::kGreen || c == PixelClass::kGold; }
bool is_red(PixelClass c) { return c == PixelClass::kRed; }

double column_offset(const Blob& b, int k) { return (b.col + 0.5) / k - 0.5; }

}  // namespace

void GreedyAgent::begin_episode(std::uint64_t) {
  last_ = {};
  search_phase_ = 0;
  stuck_ = 0;
  escape_ = 0;
  escape_turn_ = 1;
}

Action GreedyAgent::search() {
  const int p = search_phase_++ % (kSearchTurnSteps + kSearchDriveSteps);
  return p < kSearchTurnSteps ? Action{0, 1} : Action{1, 0};
}

Action GreedyAgent::act(const ObservationBundle& obs) {
  if (!obs.lights_on || obs.frame.all_zero()) return last_;

  if (last_.move == 1 && obs.step > 0 && obs.velocity.x < 0.05) {
    ++stuck_;
  } else {
    stuck_ = 0;
  }
  if (stuck_ >= kStuckSteps) {
    stuck_ = 0;
    escape_ = kEscapeSteps;
    escape_turn_ = escape_turn_ == 1 ? 2 : 1;
  }
  if (escape_ > 0) {
    --escape_;
    last_ = escape_ >= kEscapeSteps / 2 ? Action{2, escape_turn_} : Action{1, 0};
    return last_;
  }

  const int k = obs.frame.k;
  const auto food = largest_blob(obs.frame, is_food);
  const auto red = largest_blob(obs.frame, is_red);
  const double frame_pixels = static_cast<double>(k) * k;

  if (red && red->pixels > 0.02 * frame_pixels && red->row > 0.5 * k && std::abs(column_offset(*red, k)) < 0.3 &&
      (!food || red->pixels > food->pixels || red->row > food->row)) {
    last_ = {red->pixels < 0.15 * frame_pixels ? 1 : 0, column_offset(*red, k) > 0.0 ? 2 : 1};
    return last_;
  }
  if (food) {
    search_phase_ = 0;
    const double off = column_offset(*food, k);
    const int rotate = off > 0.04 ? 1 : (off < -0.04 ? 2 : 0);
    last_ = {std::abs(off) < 0.25 ? 1 : 0, rotate};
    return last_;
  }
  last_ = search();
  return last_;
}

RemoteAgent::RemoteAgent(const std::string& host, int port, int resolution)
    : name_(fmt::format("remote:{}:{}", host, port)) {
  channel_ = std::make_unique<TcpChannel>(connect_tcp(host, port));
  Message hello = make_hello(resolution, 0, false, "env");
  channel_->send(hello);
  auto ack = channel_->receive();
  if (!ack || ack->type != MessageType::kHelloAck) {
    throw ConnectError("remote agent at " + host + ":" + std::to_string(port) + " did not acknowledge hello");
  }
}

void RemoteAgent::begin_episode(std::uint64_t seed) { channel_->send(make_reset(seed)); }

Action RemoteAgent::act(const ObservationBundle& obs) {
  channel_->send(make_observation(sequence_++, {{0, obs}}));
  auto reply = channel_->receive();
  if (!reply) throw ConnectError("remote agent closed the connection");
  if (reply->type != MessageType::kStep) {
    throw ProtocolError(error_code::kOutOfOrder, fmt::format("remote agent sent {} instead of step", to_string(reply->type)));
  }
  const auto actions = parse_step(*reply);
  const auto it = actions.find(0);
  return it == actions.end() ? Action{} : it->second;
}

void RemoteAgent::end_episode(const EpisodeState& final_state) { channel_->send(make_episode_end(0, final_state)); }

AgentServer::AgentServer(std::unique_ptr<Agent> agent, int port, const std::string& host)
    : agent_(std::move(agent)), listener_(port, host) {}

void AgentServer::run(int max_connections) {
  for (int served = 0; max_connections == 0 || served < max_connections;) {
    auto socket = listener_.accept(200);
    if (!socket) continue;
    ++served;
    TcpChannel channel(std::move(*socket));
    try {
      serve(channel);
    } catch (const std::exception&) {
      // drop the connection and wait for the next one
    }
  }
}

void AgentServer::serve(Channel& channel) {
  for (;;) {
    auto in = channel.receive();
    if (!in) return;
    switch (in->type) {
      case MessageType::kHello: {
        if (in->payload.value("version", std::string()) != kProtocolVersion) {
          channel.send(make_error(error_code::kVersionMismatch, "agent speaks AAIP/1"));
          return;
        }
        Message ack;
        ack.type = MessageType::kHelloAck;
        ack.payload = {{"version", kProtocolVersion}, {"agent", agent_->name()}};
        channel.send(ack);
        break;
      }
      case MessageType::kReset:
        agent_->begin_episode(in->payload.value("seed", std::uint64_t{0}));
        break;
      case MessageType::kObservation: {
        std::map<int, Action> actions;
        for (const auto& [arena, obs] : parse_observation(*in)) actions[arena] = agent_->act(obs);
        channel.send(make_step(actions));
        break;
      }
      case MessageType::kEpisodeEnd: {
        EpisodeState s;
        s.done = true;
        s.cumulative = in->payload.value("cumulative", 0.0);
        s.step = in->payload.value("steps", 0);
        agent_->end_episode(s);
        break;
      }
      case MessageType::kBye:
        channel.send(make_bye());
        return;
      default:
        channel.send(make_error(error_code::kBadRequest, "agents accept hello, reset, observation, episode-end, bye"));
    }
  }
}

std::unique_ptr<Agent> make_agent(std::string_view spec, int resolution) {
  if (spec == "null") return std::make_unique<NullAgent>();
  if (spec == "random") return std::make_unique<RandomAgent>();
  if (spec == "greedy") return std::make_unique<GreedyAgent>();
  if (spec.rfind("remote:", 0) == 0) {
    const std::string_view addr = spec.substr(7);
    const auto colon = addr.rfind(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("remote agent needs HOST:PORT");
    int port = 0;
    try {
      port = std::stoi(std::string(addr.substr(colon + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad port in '" + std::string(spec) + "'");
    }
    return std::make_unique<RemoteAgent>(std::string(addr.substr(0, colon)), port, resolution);
  }
  throw std::invalid_argument("unknown agent '" + std::string(spec) + "' (null, random, greedy, remote:HOST:PORT)");
}

}  // namespace aai

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "aai/client.hpp"
#include "aai/episode.hpp"
#include "aai/rng.hpp"
#include "aai/socket.hpp"

namespace aai {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual void begin_episode(std::uint64_t seed) { (void)seed; }
  virtual Action act(const ObservationBundle& obs) = 0;
  virtual void end_episode(const EpisodeState& final_state) { (void)final_state; }
};

/// Always (0, 0).
class NullAgent : public Agent {
 public:
  std::string name() const override { return "null"; }
  Action act(const ObservationBundle&) override { return {}; }
};

/// Uniform over the nine actions, seeded per episode.
class RandomAgent : public Agent {
 public:
  std::string name() const override { return "random"; }
  void begin_episode(std::uint64_t seed) override { rng_ = Rng(seed); }
  Action act(const ObservationBundle&) override;

 private:
  Rng rng_{0};
};

/// Pixel classes the greedy agent reacts to.
enum class PixelClass { kOther, kGreen, kGold, kRed };
PixelClass classify_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct Blob {
  int pixels = 0;
  double row = 0.0;  // centroid
  double col = 0.0;
};

/// Largest 4-connected blob whose pixels satisfy `want`.
std::optional<Blob> largest_blob(const Frame& frame, bool (*want)(PixelClass));

/// Steers toward the largest green/gold blob and drives forward; turns away
/// from red that fills the path; searches by rotating when nothing is seen.
class GreedyAgent : public Agent {
 public:
  std::string name() const override { return "greedy"; }
  void begin_episode(std::uint64_t seed) override;
  Action act(const ObservationBundle& obs) override;

  static constexpr int kSearchTurnSteps = 60;
  static constexpr int kSearchDriveSteps = 20;
  static constexpr int kStuckSteps = 8;
  static constexpr int kEscapeSteps = 12;

 private:
  Action search();

  Action last_{};
  int search_phase_ = 0;
  int stuck_ = 0;
  int escape_ = 0;
  int escape_turn_ = 1;
};

/// Forwards observations to an agent process speaking AAIP/1 in the env role.
class RemoteAgent : public Agent {
 public:
  RemoteAgent(const std::string& host, int port, int resolution = 84);
  std::string name() const override { return name_; }
  void begin_episode(std::uint64_t seed) override;
  Action act(const ObservationBundle& obs) override;
  void end_episode(const EpisodeState& final_state) override;

 private:
  std::unique_ptr<Channel> channel_;
  std::string name_;
  std::int64_t sequence_ = 0;
};

/// Serves a local agent to RemoteAgent clients, one connection at a time.
class AgentServer {
 public:
  AgentServer(std::unique_ptr<Agent> agent, int port = 0, const std::string& host = "127.0.0.1");
  int port() const { return listener_.port(); }
  /// Handles connections until `max_connections` have been served (0 = forever).
  void run(int max_connections = 0);

 private:
  void serve(Channel& channel);

  std::unique_ptr<Agent> agent_;
  Listener listener_;
};

/// "null", "random", "greedy" or "remote:HOST:PORT".
std::unique_ptr<Agent> make_agent(std::string_view spec, int resolution = 84);

}  // namespace aai

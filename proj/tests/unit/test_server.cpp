#include <gtest/gtest.h>

#include <thread>

#include "aai/agents.hpp"
#include "aai/client.hpp"
#include "aai/harness.hpp"
#include "aai/server.hpp"

namespace {

const char* kConfig =
    "!ArenaConfig\narenas:\n  0: !Arena\n    t: 20\n    items:\n    - !Item\n      name: GoodGoal\n"
    "    - !Item\n      name: Wall\n";

aai::Message typed(aai::MessageType t, nlohmann::json payload = nlohmann::json::object()) {
  aai::Message m;
  m.type = t;
  m.payload = std::move(payload);
  return m;
}

std::string code_of(const std::vector<aai::Message>& out) {
  if (out.empty() || out[0].type != aai::MessageType::kError) return {};
  return out[0].payload.at("code").get<std::string>();
}

}  // namespace

TEST(Session, HandshakeOrder) {
  aai::Session s("a");
  EXPECT_EQ(code_of(s.handle(aai::make_configure(kConfig))), aai::error_code::kOutOfOrder);
  const auto ack = s.handle(aai::make_hello(16, 3));
  ASSERT_EQ(ack.size(), 1u);
  EXPECT_EQ(ack[0].type, aai::MessageType::kHelloAck);
  EXPECT_EQ(ack[0].session, "a");
  EXPECT_EQ(code_of(s.handle(aai::make_step({{0, {0, 0}}}))), aai::error_code::kNotConfigured);
  EXPECT_EQ(code_of(s.handle(aai::make_reset())), aai::error_code::kNotConfigured);
  const auto cack = s.handle(aai::make_configure(kConfig));
  ASSERT_EQ(cack.at(0).type, aai::MessageType::kConfigureAck);
  EXPECT_EQ(cack[0].payload.at("arenas"), nlohmann::json::array({0}));
  EXPECT_EQ(code_of(s.handle(aai::make_step({{0, {0, 0}}}))), aai::error_code::kOutOfOrder);
  const auto obs = s.handle(aai::make_reset());
  ASSERT_EQ(obs.at(0).type, aai::MessageType::kObservation);
  EXPECT_EQ(aai::parse_observation(obs[0]).at(0).frame.k, 16);
  EXPECT_EQ(code_of(s.handle(aai::make_step({{0, {7, 0}}}))), aai::error_code::kInvalidAction);
  EXPECT_EQ(code_of(s.handle(aai::make_step({{5, {0, 0}}}))), aai::error_code::kBadRequest);
  EXPECT_EQ(code_of(s.handle(typed(aai::MessageType::kWorldSummary))), aai::error_code::kNotPlayMode);
  EXPECT_FALSE(s.closed());
  const auto bye = s.handle(aai::make_bye());
  EXPECT_EQ(bye.at(0).type, aai::MessageType::kBye);
  EXPECT_TRUE(s.closed());
}

TEST(Session, VersionMismatchCloses) {
  aai::Session s("a");
  auto hello = aai::make_hello(16, 1);
  hello.payload["version"] = "AAIP/9";
  EXPECT_EQ(code_of(s.handle(hello)), aai::error_code::kVersionMismatch);
  EXPECT_TRUE(s.closed());
}

TEST(Session, BadConfigIsRejected) {
  aai::Session s("a");
  s.handle(aai::make_hello(16, 1));
  EXPECT_EQ(code_of(s.handle(aai::make_configure("!ArenaConfig\narenas:\n  0: !Arena\n    t: [\n"))),
            aai::error_code::kBadRequest);
  const auto out = s.handle(aai::make_configure(
      "!ArenaConfig\narenas:\n  0: !Arena\n    t: 20\n    items:\n    - !Item\n      name: Cube\n"));
  EXPECT_EQ(code_of(out), aai::error_code::kBadRequest);
  EXPECT_FALSE(out[0].payload.at("violations").empty());
}

TEST(Session, DecodeErrors) {
  aai::Session s("a");
  s.handle_decode_error(aai::ProtocolError(aai::error_code::kUnknownType, "x"));
  EXPECT_FALSE(s.closed());
  const auto out = s.handle_decode_error(aai::ProtocolError(aai::error_code::kMalformedFrame, "x"));
  EXPECT_EQ(code_of(out), aai::error_code::kMalformedFrame);
  EXPECT_TRUE(s.closed());
}

TEST(Session, EpisodeEndAndPlaySummaries) {
  aai::Session s("p");
  s.handle(aai::make_hello(8, 1, true));
  s.handle(aai::make_configure(kConfig));
  const auto first = s.handle(aai::make_reset(4));
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first[1].type, aai::MessageType::kWorldSummary);
  EXPECT_EQ(first[1].payload.at("objects").size(), 2u);
  bool ended = false;
  for (int i = 0; i < 25 && !ended; ++i) {
    const auto out = s.handle(aai::make_step({{0, {0, 1}}}));
    ASSERT_EQ(out[0].type, aai::MessageType::kObservation);
    const int ends = out[0].payload.at("episode_ends");
    EXPECT_EQ(out.size(), 1u + ends + 1u);
    if (ends == 1) {
      ended = true;
      EXPECT_EQ(out[1].type, aai::MessageType::kEpisodeEnd);
      EXPECT_EQ(out[1].payload.at("steps"), 20);
      EXPECT_EQ(out[1].payload.at("cause"), "time-limit");
    }
  }
  EXPECT_TRUE(ended);
}

TEST(Server, TcpAndWebSocketSessions) {
  aai::ServerOptions opts;
  aai::Server server(opts);
  server.start();
  for (bool ws : {false, true}) {
    auto c = ws ? aai::Client::websocket("127.0.0.1", server.port()) : aai::Client::tcp("127.0.0.1", server.port());
    c.hello(16, 9, false, ws);
    EXPECT_FALSE(c.session().empty());
    c.configure(kConfig);
    const auto r = c.reset();
    EXPECT_EQ(r.observations.at(0).frame.k, 16);
    int steps = 0;
    for (; steps < 30; ++steps) {
      const auto s = c.step({{0, {0, 1}}});
      if (!s.episode_ends.empty()) break;
    }
    EXPECT_EQ(steps, 19);
    c.bye();
  }
  server.stop();
}

TEST(Server, SameSeedSameBytes) {
  aai::Server server({});
  server.start();
  auto run = [&] {
    auto c = aai::Client::tcp("127.0.0.1", server.port());
    c.hello(16, 5);
    c.configure(kConfig);
    std::vector<std::vector<std::uint8_t>> wire{aai::encode_message(c.reset().raw)};
    for (int i = 0; i < 10; ++i) wire.push_back(aai::encode_message(c.step({{0, {1, i % 3}}}).raw));
    c.bye();
    return wire;
  };
  EXPECT_EQ(run(), run());
  server.stop();
}

TEST(Server, BusyWhenFull) {
  aai::ServerOptions opts;
  opts.max_sessions = 1;
  aai::Server server(opts);
  server.start();
  auto first = aai::Client::tcp("127.0.0.1", server.port());
  first.hello(8, 1);
  auto second = aai::Client::tcp("127.0.0.1", server.port());
  try {
    second.hello(8, 1);
    ADD_FAILURE() << "second session accepted";
  } catch (const aai::ProtocolError& e) {
    EXPECT_EQ(e.code(), aai::error_code::kServerBusy);
  } catch (const aai::ConnectError&) {
    ADD_FAILURE() << "closed without server-busy";
  }
  first.bye();
  server.stop();
}

TEST(Agents, MakeAgent) {
  EXPECT_EQ(aai::make_agent("null")->name(), "null");
  EXPECT_EQ(aai::make_agent("random")->name(), "random");
  EXPECT_EQ(aai::make_agent("greedy")->name(), "greedy");
  EXPECT_THROW(aai::make_agent("clever"), std::invalid_argument);
}

TEST(Agents, PixelClasses) {
  EXPECT_EQ(aai::classify_pixel(20, 200, 30), aai::PixelClass::kGreen);
  EXPECT_EQ(aai::classify_pixel(230, 180, 10), aai::PixelClass::kGold);
  EXPECT_EQ(aai::classify_pixel(220, 20, 20), aai::PixelClass::kRed);
  EXPECT_EQ(aai::classify_pixel(140, 140, 130), aai::PixelClass::kOther);
}

TEST(Agents, RemoteMatchesLocal) {
  aai::ArenaConfigDoc doc;
  aai::ArenaSpec spec;
  spec.t = 250;
  aai::ItemSpec goal;
  goal.name = "GoodGoal";
  spec.items = {goal};
  doc.arenas[0] = spec;
  aai::RunOptions opts;
  opts.resolution = 32;

  aai::GreedyAgent local;
  const auto expected = aai::run_episodes(local, doc, 3, 11, opts);

  aai::AgentServer served(std::make_unique<aai::GreedyAgent>());
  std::thread t([&] { served.run(1); });
  aai::RunStats got;
  {
    aai::RemoteAgent remote("127.0.0.1", served.port(), 32);
    got = aai::run_episodes(remote, doc, 3, 11, opts);
  }
  t.join();
  ASSERT_EQ(got.log.size(), expected.log.size());
  for (std::size_t i = 0; i < got.log.size(); ++i) {
    EXPECT_EQ(got.log[i].reward, expected.log[i].reward);
    EXPECT_EQ(got.log[i].steps, expected.log[i].steps);
  }
}

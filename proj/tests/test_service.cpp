#include <gtest/gtest.h>

#include <httplib.h>

#include <random>
#include <set>
#include <thread>

#include "collapsi/notation.hpp"
#include "collapsi/service.hpp"

using namespace collapsi;

namespace {

const char* kGoldenDeal = "JA2A/3JA4/2323/34A2";

template <typename Fn>
ServiceError capture(Fn fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ServiceError";
  return ServiceError(0, "", "");
}

}  // namespace

TEST(GameService, CreateFromDeal) {
  GameService svc;
  const GameSession s = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  EXPECT_EQ(s.current.red, (Coord{0, 0}));
  EXPECT_EQ(s.current.blue, (Coord{1, 1}));
  EXPECT_EQ(s.current.to_move, Player::Red);
  EXPECT_TRUE(s.history.empty());
  EXPECT_EQ(svc.get(s.id).current, s.current);
}

TEST(GameService, SeededGamesShareDealButNotId) {
  GameService svc;
  const auto a = svc.create_game(std::nullopt, 42);
  const auto b = svc.create_game(std::nullopt, 42);
  EXPECT_EQ(a.start, b.start);
  EXPECT_NE(a.id, b.id);
}

TEST(GameService, InvalidDealIs422) {
  GameService svc;
  const auto e = capture([&] { svc.create_game(std::string("AAAA/AAAA/AAAA/AAAA"), std::nullopt); });
  EXPECT_EQ(e.status(), 422);
  EXPECT_EQ(e.code(), "invalid_deal");
}

TEST(GameService, UnknownIdIs404) {
  GameService svc;
  EXPECT_EQ(capture([&] { svc.get("nope"); }).status(), 404);
  EXPECT_EQ(capture([&] { svc.analysis("nope"); }).status(), 404);
}

TEST(GameService, PlayThenUndoRestores) {
  GameService svc;
  const auto s = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  const auto after = svc.play_move(s.id, Move{{0, 2}, {}});
  EXPECT_EQ(after.history.size(), 1u);
  EXPECT_EQ(after.current.red, (Coord{0, 2}));
  EXPECT_EQ(after.history.front().move.path.size(), 2u);
  const auto back = svc.undo(s.id);
  EXPECT_EQ(back.current, s.current);
  EXPECT_TRUE(back.history.empty());
  EXPECT_EQ(capture([&] { svc.undo(s.id); }).status(), 409);
}

TEST(GameService, EndingOnOpponentIs409WithDestinations) {
  GameService svc;
  const auto s = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  const auto e = capture([&] { svc.play_move(s.id, Move{{1, 1}, {}}); });
  EXPECT_EQ(e.status(), 409);
  EXPECT_EQ(e.code(), "illegal_move");
  EXPECT_EQ(e.legal_destinations().size(), 14u);
  EXPECT_EQ(svc.get(s.id).current, s.current);
}

TEST(GameService, HistoryReplaysToCurrent) {
  GameService svc;
  const auto s = svc.create_game(std::nullopt, 3);
  std::mt19937_64 rng(3);
  GameSession now = s;
  for (int i = 0; i < 6 && !is_terminal(now.current); ++i) {
    const auto moves = legal_moves(now.current);
    now = i % 2 ? svc.engine_move(s.id) : svc.play_move(s.id, moves[rng() % moves.size()]);
    EXPECT_NO_THROW(validate_state(now.current));
  }
  GameState replay = now.start;
  for (const auto& h : now.history) {
    EXPECT_EQ(h.state, replay);
    replay = apply_move(replay, h.move);
  }
  EXPECT_EQ(replay, now.current);
}

TEST(Analysis, GoldenBestChildMatchesParent) {
  GameService svc;
  const auto s = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  const Analysis a = svc.analysis(s.id);
  EXPECT_EQ(a.overall.score.value(), 9);
  EXPECT_TRUE(a.mover_wins);
  ASSERT_EQ(a.moves.size(), 14u);
  int best_flags = 0;
  bool found = false;
  for (const auto& m : a.moves) {
    found |= m.score.value() == 9;
    if (m.best) {
      ++best_flags;
      EXPECT_EQ(m.score.value(), 9);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(best_flags, 1);
  EXPECT_EQ(svc.get(s.id).current, s.current);  // side-effect free
  const auto j = to_json(a);
  EXPECT_EQ(j["plies_to_end"], 7);
}

TEST(Analysis, MinimaxIdentityOnRandomPositions) {
  std::mt19937_64 rng(19);
  GameService svc;
  for (int i = 0; i < 6; ++i) {
    const auto s = svc.create_game(std::nullopt, rng());
    for (int k = 0; k < 3 + i; ++k) {
      if (is_terminal(svc.get(s.id).current)) break;
      svc.engine_move(s.id);
    }
    const Analysis a = svc.analysis(s.id);
    if (a.moves.empty()) continue;
    int best = a.moves.front().score.value();
    for (const auto& m : a.moves) {
      best = a.state.to_move == Player::Red ? std::max(best, m.score.value()) : std::min(best, m.score.value());
    }
    EXPECT_EQ(best, a.overall.score.value());
  }
}

TEST(Analysis, TerminalHasNoMoves) {
  GameState s = parse_state("JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
  s.face_up = static_cast<std::uint16_t>(cell_bit(s.red) | cell_bit(s.blue));
  const Analysis a = analyse(s);
  EXPECT_TRUE(a.moves.empty());
  EXPECT_EQ(a.overall.score.value(), terminal_score(s));
  EXPECT_FALSE(a.overall.best_move);
}

TEST(EngineMove, NeverThrowsAwayAWin) {
  std::mt19937_64 rng(23);
  GameService svc;
  for (int i = 0; i < 10; ++i) {
    const auto s = svc.create_game(std::nullopt, rng());
    for (int k = 0; k < static_cast<int>(rng() % 4); ++k) {
      const auto moves = legal_moves(svc.get(s.id).current);
      if (moves.empty()) break;
      svc.play_move(s.id, moves[rng() % moves.size()]);
    }
    const GameState before = svc.get(s.id).current;
    if (is_terminal(before)) continue;
    const int parent = solve_score(before).score.value();
    const GameState after = svc.engine_move(s.id).current;
    EXPECT_EQ(solve_score(after).score.value() > 0, parent > 0);
  }
}

TEST(GameService, EvictsBeyondCapacity) {
  GameService svc(3);
  const auto first = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  const auto second = svc.create_game(std::string(kGoldenDeal), std::nullopt);
  svc.get(first.id);  // touch: second becomes least recently used
  svc.create_game(std::string(kGoldenDeal), std::nullopt);
  svc.create_game(std::string(kGoldenDeal), std::nullopt);
  EXPECT_EQ(svc.size(), 3u);
  EXPECT_NO_THROW(svc.get(first.id));
  EXPECT_EQ(capture([&] { svc.get(second.id); }).status(), 404);
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<HttpServer>(service_);
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 100 && !client_->Get("/games/warmup"); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  nlohmann::json post(const std::string& path, const nlohmann::json& body, int expect) {
    auto res = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
    return nlohmann::json::parse(res->body);
  }
  nlohmann::json get(const std::string& path, int expect) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return nlohmann::json::parse(res->body);
  }

  GameService service_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, GameLifecycle) {
  const auto created = post("/games", {{"deal", kGoldenDeal}}, 201);
  const std::string id = created["id"];
  EXPECT_EQ(created["state"], "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
  EXPECT_EQ(created["legal_moves"].size(), 14u);

  const auto analysis = get("/games/" + id + "/analysis", 200);
  EXPECT_EQ(analysis["score"], 9);
  EXPECT_EQ(analysis["plies_to_end"], 7);
  EXPECT_EQ(analysis["moves"].size(), 14u);
  EXPECT_FALSE(analysis["best_move"].is_null());

  const auto bad = post("/games/" + id + "/moves", {{"dest", {{"row", 1}, {"col", 1}}}}, 409);
  EXPECT_EQ(bad["code"], "illegal_move");
  EXPECT_EQ(bad["legal_destinations"].size(), 14u);

  const auto moved = post("/games/" + id + "/moves", {{"dest", {{"row", 0}, {"col", 2}}}}, 200);
  EXPECT_EQ(moved["to_move"], "b");
  EXPECT_EQ(moved["history"].size(), 1u);

  const auto engine = post("/games/" + id + "/engine-move", nlohmann::json::object(), 200);
  EXPECT_EQ(engine["history"].size(), 2u);

  post("/games/" + id + "/undo", nlohmann::json::object(), 200);
  const auto undone = post("/games/" + id + "/undo", nlohmann::json::object(), 200);
  EXPECT_EQ(undone["state"], created["state"]);
  EXPECT_EQ(get("/games/" + id, 200)["history"].size(), 0u);
}

TEST_F(HttpTest, Errors) {
  EXPECT_EQ(post("/games", {{"deal", "AAAA/AAAA/AAAA/AAAA"}}, 422)["code"], "invalid_deal");
  EXPECT_EQ(get("/games/doesnotexist", 404)["code"], "unknown_game");
  const std::string id = post("/games", {{"seed", 1}}, 201)["id"];
  EXPECT_EQ(post("/games/" + id + "/moves", {{"nodest", 1}}, 400)["code"], "bad_request");
  EXPECT_EQ(post("/games/" + id + "/moves", {{"dest", {7, 7}}}, 400)["code"], "bad_request");
}

#pragma once

// In-memory game sessions for interactive analysis, plus the HTTP front end.
//
// Routes (JSON bodies and responses):
//   POST /games                      {"deal"?: "<deal>", "seed"?: N}
//   GET  /games/{id}
//   POST /games/{id}/moves           {"dest": {"row": r, "col": c}, "path"?: [...]}
//   POST /games/{id}/engine-move
//   POST /games/{id}/undo
//   GET  /games/{id}/analysis
// Errors: {"code", "message", "legal_destinations"?}.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "collapsi/engine.hpp"
#include "collapsi/errors.hpp"
#include "collapsi/solver.hpp"

namespace collapsi {

struct HistoryEntry {
  GameState state;  // before the move
  Move move;
};

struct GameSession {
  std::string id;
  GameState start;
  std::vector<HistoryEntry> history;
  GameState current;
};

struct MoveEvaluation {
  Move move;
  Score score;      // value of the position after the move
  bool mover_wins;  // for the side playing the move
  bool best;
};

struct Analysis {
  GameState state;
  SolveResult overall;
  bool mover_wins;
  std::vector<MoveEvaluation> moves;
};

class ServiceError : public Error {
 public:
  ServiceError(int status, std::string code, const std::string& message,
               std::vector<Coord> legal_destinations = {})
      : Error(message), status_(status), code_(std::move(code)), legal_(std::move(legal_destinations)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::vector<Coord>& legal_destinations() const { return legal_; }

 private:
  int status_;
  std::string code_;
  std::vector<Coord> legal_;
};

/// Every solver call is pure, so analysis never touches session state.
Analysis analyse(const GameState& state);

class GameService {
 public:
  explicit GameService(std::size_t capacity = 1024);

  /// 422 "invalid_deal" when the deal text does not parse.
  GameSession create_game(const std::optional<std::string>& deal, std::optional<std::uint64_t> seed);
  /// 404 "unknown_game" for any id not held.
  GameSession get(const std::string& id);
  /// 409 "illegal_move" with the legal destinations.
  GameSession play_move(const std::string& id, const Move& move);
  /// 409 "game_over" when the side to move is stuck.
  GameSession engine_move(const std::string& id);
  /// 409 "nothing_to_undo" at the start of a game.
  GameSession undo(const std::string& id);
  Analysis analysis(const std::string& id);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

 private:
  struct Slot {
    std::mutex mu;
    GameSession session;
    std::uint64_t last_used = 0;
  };

  std::shared_ptr<Slot> find(const std::string& id);
  std::string fresh_id();

  std::size_t capacity_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> slots_;
  std::uint64_t clock_ = 0;
  std::uint64_t id_state_;
};

nlohmann::json to_json(Coord c);
nlohmann::json to_json(const Move& m);
nlohmann::json to_json(const GameState& s);
nlohmann::json to_json(const GameSession& s);
nlohmann::json to_json(const Analysis& a);
nlohmann::json to_json(const ServiceError& e);

/// Accepts {"row": r, "col": c} or [r, c]. Throws ServiceError 400.
Coord coord_from_json(const nlohmann::json& j);

/// HTTP front end. Binds loopback by default and permits cross-origin calls.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws IoError on failure.
  int bind(const std::string& host = "127.0.0.1", int port = 0);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace collapsi

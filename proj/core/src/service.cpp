#include "collapsi/service.hpp"

#include <random>

#include <fmt/format.h>

#include "collapsi/deals.hpp"
#include "collapsi/notation.hpp"

namespace collapsi {

Analysis analyse(const GameState& state) {
  Analysis a{state, solve_score(state), false, {}};
  const bool red = state.to_move == Player::Red;
  a.mover_wins = (a.overall.score.value() > 0) == red;
  for (Move& m : legal_moves(state)) {
    const Score child = solve_score(advance(state, m.dest)).score;
    const bool wins = (child.value() > 0) == red;
    const bool best = a.overall.best_move && a.overall.best_move->dest == m.dest;
    a.moves.push_back({std::move(m), child, wins, best});
  }
  return a;
}

GameService::GameService(std::size_t capacity)
    : capacity_(capacity == 0 ? 1 : capacity), id_state_(std::random_device{}()) {}

std::string GameService::fresh_id() {
  // splitmix64 over a random start; ids only need to be unique per process.
  std::string id;
  do {
    std::uint64_t z = (id_state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    id = fmt::format("{:016x}", z ^ (z >> 31));
  } while (slots_.contains(id));
  return id;
}

std::shared_ptr<GameService::Slot> GameService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = slots_.find(id);
  if (it == slots_.end()) throw ServiceError(404, "unknown_game", "no game with id '" + id + "'");
  it->second->last_used = ++clock_;
  return it->second;
}

std::size_t GameService::size() const {
  std::lock_guard lock(mu_);
  return slots_.size();
}

GameSession GameService::create_game(const std::optional<std::string>& deal_text,
                                     std::optional<std::uint64_t> seed) {
  Deal deal;
  if (deal_text) {
    try {
      deal = parse_deal(*deal_text);
    } catch (const Error& e) {
      throw ServiceError(422, "invalid_deal", e.what());
    }
  } else {
    DealRng rng(seed ? *seed : std::random_device{}());
    deal = random_deal(rng);
  }
  auto slot = std::make_shared<Slot>();
  slot->session.start = initial_state(deal);
  slot->session.current = slot->session.start;

  std::lock_guard lock(mu_);
  if (slots_.size() >= capacity_) {
    auto oldest = slots_.begin();
    for (auto it = slots_.begin(); it != slots_.end(); ++it) {
      if (it->second->last_used < oldest->second->last_used) oldest = it;
    }
    slots_.erase(oldest);
  }
  slot->session.id = fresh_id();
  slot->last_used = ++clock_;
  slots_.emplace(slot->session.id, slot);
  return slot->session;
}

GameSession GameService::get(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return slot->session;
}

namespace {

std::vector<Coord> destinations(const GameState& s) {
  std::vector<Coord> out;
  for (const Move& m : legal_moves(s)) out.push_back(m.dest);
  return out;
}

}  // namespace

GameSession GameService::play_move(const std::string& id, const Move& move) {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  GameSession& s = slot->session;
  GameState next;
  try {
    next = apply_move(s.current, move);
  } catch (const IllegalMove& e) {
    std::string msg = e.what();
    if (move.dest == s.current.pawn(opponent(s.current.to_move))) {
      msg = "a move may not end on the opponent's pawn";
    }
    throw ServiceError(409, "illegal_move", msg, destinations(s.current));
  }
  Move recorded = move;
  if (recorded.path.empty()) {
    for (Move& m : legal_moves(s.current)) {
      if (m.dest == move.dest) recorded = std::move(m);
    }
  }
  s.history.push_back({s.current, std::move(recorded)});
  s.current = next;
  return s;
}

GameSession GameService::engine_move(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  GameSession& s = slot->session;
  const SolveResult r = solve_score(s.current);
  if (!r.best_move) throw ServiceError(409, "game_over", "the side to move has no legal move");
  s.history.push_back({s.current, *r.best_move});
  s.current = apply_move(s.current, *r.best_move);
  return s;
}

GameSession GameService::undo(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  GameSession& s = slot->session;
  if (s.history.empty()) throw ServiceError(409, "nothing_to_undo", "no move has been played");
  s.current = s.history.back().state;
  s.history.pop_back();
  return s;
}

Analysis GameService::analysis(const std::string& id) {
  auto slot = find(id);
  GameState state;
  {
    std::lock_guard lock(slot->mu);
    state = slot->session.current;
  }
  return analyse(state);
}

nlohmann::json to_json(Coord c) { return {{"row", c.row}, {"col", c.col}}; }

nlohmann::json to_json(const Move& m) {
  nlohmann::json path = nlohmann::json::array();
  for (Coord c : m.path) path.push_back(to_json(c));
  return {{"dest", to_json(m.dest)}, {"path", path}, {"length", m.length()}};
}

nlohmann::json to_json(const GameState& s) {
  nlohmann::json legal = nlohmann::json::array();
  for (const Move& m : legal_moves(s)) legal.push_back(to_json(m));
  return {{"state", format_state(s)},
          {"deal", format_deal(s.deal)},
          {"face_up", fmt::format("{:04X}", s.face_up)},
          {"face_up_count", s.face_up_count()},
          {"red", to_json(s.red)},
          {"blue", to_json(s.blue)},
          {"to_move", s.to_move == Player::Red ? "r" : "b"},
          {"terminal", legal.empty()},
          {"legal_moves", legal}};
}

nlohmann::json to_json(const GameSession& s) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& h : s.history) history.push_back({{"state", format_state(h.state)}, {"move", to_json(h.move)}});
  nlohmann::json out = to_json(s.current);
  out["id"] = s.id;
  out["start"] = format_state(s.start);
  out["history"] = history;
  return out;
}

namespace {

nlohmann::json score_fields(const Score& score, int face_up_now) {
  return {{"score", score.value()},
          {"winner", score.winner() == Player::Red ? "r" : "b"},
          {"plies_to_end", kCells - score.face_up()},
          {"plies_remaining", face_up_now - score.face_up()}};
}

}  // namespace

nlohmann::json to_json(const Analysis& a) {
  const int n = a.state.face_up_count();
  nlohmann::json out = score_fields(a.overall.score, n);
  out["state"] = format_state(a.state);
  out["mover_wins"] = a.mover_wins;
  out["best_move"] = a.overall.best_move ? to_json(*a.overall.best_move) : nlohmann::json(nullptr);
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : a.moves) {
    nlohmann::json e = score_fields(m.score, n);
    e["move"] = to_json(m.move);
    e["mover_wins"] = m.mover_wins;
    e["best"] = m.best;
    moves.push_back(e);
  }
  out["moves"] = moves;
  return out;
}

nlohmann::json to_json(const ServiceError& e) {
  nlohmann::json out = {{"code", e.code()}, {"message", e.what()}};
  if (!e.legal_destinations().empty()) {
    nlohmann::json dests = nlohmann::json::array();
    for (Coord c : e.legal_destinations()) dests.push_back(to_json(c));
    out["legal_destinations"] = dests;
  }
  return out;
}

Coord coord_from_json(const nlohmann::json& j) {
  try {
    Coord c;
    if (j.is_array() && j.size() == 2) {
      c = {j[0].get<int>(), j[1].get<int>()};
    } else {
      c = {j.at("row").get<int>(), j.at("col").get<int>()};
    }
    if (c.row < 0 || c.row >= kSide || c.col < 0 || c.col >= kSide) {
      throw ServiceError(400, "bad_request", "coordinate outside the 4x4 board");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ServiceError(400, "bad_request", std::string("expected {\"row\": r, \"col\": c}: ") + e.what());
  }
}

}  // namespace collapsi

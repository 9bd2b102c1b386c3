#include "collapsi/engine.hpp"

#include <algorithm>
#include <string>

#include "collapsi/errors.hpp"
#include "route_table.hpp"

namespace collapsi {

Coord torus_step(Coord c, Direction dir) {
  switch (dir) {
    case Direction::Up:
      return {(c.row + kSide - 1) % kSide, c.col};
    case Direction::Down:
      return {(c.row + 1) % kSide, c.col};
    case Direction::Left:
      return {c.row, (c.col + kSide - 1) % kSide};
    case Direction::Right:
      return {c.row, (c.col + 1) % kSide};
  }
  return c;
}

namespace detail {
namespace {

constexpr std::array<Direction, 4> kDirections = {Direction::Up, Direction::Down, Direction::Left,
                                                  Direction::Right};

void extend(int origin, Coord at, std::uint16_t visited, Route& partial,
            std::array<std::vector<Route>, 5>& out) {
  for (Direction d : kDirections) {
    const Coord next = torus_step(at, d);
    const int idx = next.index();
    if (visited & cell_bit(idx)) continue;
    if (idx == origin && rules::kOriginCountsAsVisited) continue;
    Route r = partial;
    r.cells[r.length] = static_cast<std::uint8_t>(idx);
    r.length += 1;
    r.interior = r.entered;
    r.entered = static_cast<std::uint16_t>(r.entered | cell_bit(idx));
    r.dest = static_cast<std::uint8_t>(idx);
    if (idx != origin) out[r.length].push_back(r);
    if (r.length < 4) extend(origin, next, static_cast<std::uint16_t>(visited | cell_bit(idx)), r, out);
  }
}

RouteTable build_route_table() {
  RouteTable table;
  for (int origin = 0; origin < kCells; ++origin) {
    auto& all = table.all[origin];
    Route empty;
    extend(origin, Coord::from_index(origin), 0, empty, all);
    for (unsigned len = 1; len <= 4; ++len) {
      auto& routes = all[len];
      std::sort(routes.begin(), routes.end(), [](const Route& a, const Route& b) {
        return std::lexicographical_compare(a.cells.begin(), a.cells.begin() + a.length,
                                            b.cells.begin(), b.cells.begin() + b.length);
      });
      auto& minimal = table.minimal[origin][len];
      for (const Route& r : routes) {
        const bool dominated = std::any_of(routes.begin(), routes.end(), [&](const Route& o) {
          return o.dest == r.dest && o.entered != r.entered && (o.entered & ~r.entered) == 0;
        });
        const bool duplicate = std::any_of(minimal.begin(), minimal.end(), [&](const Route& o) {
          return o.dest == r.dest && o.entered == r.entered;
        });
        if (!dominated && !duplicate) minimal.push_back(r);
      }
    }
  }
  return table;
}

}  // namespace

const RouteTable& route_table() {
  static const RouteTable table = build_route_table();
  return table;
}

}  // namespace detail

void validate_deal(const Deal& deal) {
  std::array<int, 6> counts{};
  for (Card c : deal.cells) {
    const auto v = static_cast<std::size_t>(c);
    if (v < 1 || v > 5) throw MultisetViolation("deal contains an unknown card value");
    ++counts[v];
  }
  if (counts != kCardCounts) {
    throw MultisetViolation("deal must contain exactly four aces, four 2s, four 3s, two 4s and two jokers");
  }
}

void validate_state(const GameState& state) {
  validate_deal(state.deal);
  if (state.red == state.blue) throw PawnCollision("red and blue pawns share a cell");
  for (Coord c : {state.red, state.blue}) {
    if (c.row < 0 || c.row >= kSide || c.col < 0 || c.col >= kSide) {
      throw MalformedText("pawn coordinate outside the 4x4 board");
    }
  }
  if (!state.is_face_up(state.red) || !state.is_face_up(state.blue)) {
    throw PawnOnFaceDown("a pawn stands on a face-down card");
  }
  const int played = kCells - state.face_up_count();
  const bool red_turn = played % 2 == 0;
  if (red_turn != (state.to_move == Player::Red)) {
    throw ParityViolation(std::to_string(played) + " plies played but " +
                          (state.to_move == Player::Red ? "red" : "blue") + " is to move");
  }
}

GameState initial_state(const Deal& deal) {
  GameState s;
  s.deal = deal;
  s.face_up = kAllFaceUp;
  s.to_move = Player::Red;
  int found = 0;
  for (int i = 0; i < kCells && found < 2; ++i) {
    if (deal.cells[i] != Card::Joker) continue;
    (found == 0 ? s.red : s.blue) = Coord::from_index(i);
    ++found;
  }
  if (found < 2) throw MultisetViolation("deal needs two jokers");
  return s;
}

std::uint16_t destination_mask(const GameState& state) {
  const Coord from = state.pawn(state.to_move);
  const Coord opp = state.pawn(opponent(state.to_move));
  return detail::reachable(from.index(), step_allowance(state.deal.at(from)), state.face_up,
                           cell_bit(opp));
}

namespace {

// First route to `dest` in (length, lexicographic) order, or nullptr.
const detail::Route* witness_route(const GameState& state, int dest) {
  const Coord from = state.pawn(state.to_move);
  const std::uint16_t opp_bit = cell_bit(state.pawn(opponent(state.to_move)));
  const unsigned allowance = step_allowance(state.deal.at(from));
  const auto& table = detail::route_table().all[from.index()];
  for (unsigned len = 1; len <= 4; ++len) {
    if ((allowance & (1u << len)) == 0) continue;
    for (const detail::Route& r : table[len]) {
      if (r.dest == dest && (r.entered & ~state.face_up) == 0 &&
          rules::interior_allowed(r.interior, opp_bit)) {
        return &r;
      }
    }
  }
  return nullptr;
}

Move to_move(const detail::Route& r) {
  Move m;
  m.dest = Coord::from_index(r.dest);
  m.path.reserve(r.length);
  for (int i = 0; i < r.length; ++i) m.path.push_back(Coord::from_index(r.cells[i]));
  return m;
}

bool adjacent(Coord a, Coord b) {
  for (Direction d : {Direction::Up, Direction::Down, Direction::Left, Direction::Right}) {
    if (torus_step(a, d) == b) return true;
  }
  return false;
}

bool path_is_legal(const GameState& state, const Move& move) {
  const Coord from = state.pawn(state.to_move);
  const Coord opp = state.pawn(opponent(state.to_move));
  const auto len = static_cast<unsigned>(move.path.size());
  if (len < 1 || len > 4 || (step_allowance(state.deal.at(from)) & (1u << len)) == 0) return false;
  if (move.path.back() != move.dest) return false;
  std::uint16_t seen = rules::kOriginCountsAsVisited ? cell_bit(from) : 0;
  std::uint16_t interior = 0;
  Coord at = from;
  for (std::size_t i = 0; i < move.path.size(); ++i) {
    const Coord next = move.path[i];
    if (next.row < 0 || next.row >= kSide || next.col < 0 || next.col >= kSide) return false;
    if (!adjacent(at, next) || (seen & cell_bit(next)) || !state.is_face_up(next)) return false;
    seen |= cell_bit(next);
    if (i + 1 < move.path.size()) interior |= cell_bit(next);
    at = next;
  }
  return rules::interior_allowed(interior, cell_bit(opp));
}

}  // namespace

std::vector<Move> legal_moves(const GameState& state) {
  std::vector<Move> moves;
  std::uint16_t dests = destination_mask(state);
  while (dests) {
    const int dest = std::countr_zero(dests);
    dests &= static_cast<std::uint16_t>(dests - 1);
    moves.push_back(to_move(*witness_route(state, dest)));
  }
  return moves;
}

GameState advance(const GameState& state, Coord dest) {
  GameState next = state;
  const Coord from = state.pawn(state.to_move);
  next.face_up = static_cast<std::uint16_t>(next.face_up & ~cell_bit(from));
  (state.to_move == Player::Red ? next.red : next.blue) = dest;
  next.to_move = opponent(state.to_move);
  return next;
}

GameState apply_move(const GameState& state, const Move& move) {
  const Coord d = move.dest;
  if (d.row < 0 || d.row >= kSide || d.col < 0 || d.col >= kSide) {
    throw IllegalMove("destination outside the board");
  }
  if ((destination_mask(state) & cell_bit(d)) == 0) {
    throw IllegalMove("no legal route to (" + std::to_string(d.row) + "," + std::to_string(d.col) + ")");
  }
  if (!move.path.empty() && !path_is_legal(state, move)) {
    throw IllegalMove("supplied path is not a legal route");
  }
  return advance(state, d);
}

bool is_terminal(const GameState& state) { return destination_mask(state) == 0; }

int terminal_score(const GameState& state) {
  if (!is_terminal(state)) throw InvalidState("terminal_score called on a non-terminal state");
  const int n = state.face_up_count();
  return state.to_move == Player::Blue ? n : -n;
}

}  // namespace collapsi

#include "collapsi/solver.hpp"

#include <array>
#include <bit>
#include <string>
#include <unordered_map>

#include "collapsi/errors.hpp"
#include "route_table.hpp"

namespace collapsi {

Score::Score(int value) : value_(value) {
  const int mag = value < 0 ? -value : value;
  if (mag < 2 || mag > kCells) throw OutOfRange("score magnitude must be in 2..16, got " + std::to_string(value));
}

namespace {

constexpr int kInfinity = kCells + 1;

thread_local std::uint64_t g_nodes = 0;

// Compact search position. pos[0] is red, pos[1] is blue.
struct Node {
  std::uint16_t face_up;
  std::array<std::uint8_t, 2> pos;
  std::uint8_t side;
};

Node to_node(const GameState& s) {
  return {s.face_up,
          {static_cast<std::uint8_t>(s.red.index()), static_cast<std::uint8_t>(s.blue.index())},
          static_cast<std::uint8_t>(s.to_move)};
}

Node child_of(const Node& n, int dest) {
  Node c = n;
  c.face_up = static_cast<std::uint16_t>(c.face_up & ~cell_bit(n.pos[n.side]));
  c.pos[n.side] = static_cast<std::uint8_t>(dest);
  c.side ^= 1;
  return c;
}

class Searcher {
 public:
  explicit Searcher(const Deal& deal, bool memo) : memo_enabled_(memo) {
    for (int i = 0; i < kCells; ++i) {
      allowance_[i] = step_allowance(deal.cells[i]);
      const auto card = static_cast<std::size_t>(deal.cells[i]);
      by_card_[card] = static_cast<std::uint16_t>(by_card_[card] | cell_bit(i));
    }
  }

  std::uint16_t destinations(const Node& n) const {
    const int from = n.pos[n.side];
    return detail::reachable(from, allowance_[from], n.face_up, cell_bit(n.pos[n.side ^ 1]));
  }

  // Negamax value for the side to move: +face-up if it wins, -face-up if it loses.
  int negamax(const Node& n, int alpha, int beta) {
    ++g_nodes;
    const std::uint16_t dests = destinations(n);
    if (dests == 0) return -std::popcount(n.face_up);

    const int alpha_in = alpha;
    std::uint32_t key = 0;
    if (memo_enabled_) {
      key = memo_key(n);
      if (auto it = memo_.find(key); it != memo_.end()) {
        const Entry e = it->second;
        if (e.bound == Bound::Exact) return e.value;
        if (e.bound == Bound::Lower && e.value > alpha) alpha = e.value;
        if (e.bound == Bound::Upper && e.value < beta) beta = e.value;
        if (alpha >= beta) return e.value;
      }
    }

    int best = -kInfinity;
    // High-value destination cards first, row-major within a card value.
    for (std::size_t card = 5; card >= 1 && alpha < beta; --card) {
      std::uint16_t group = dests & by_card_[card];
      while (group) {
        const int dest = std::countr_zero(group);
        group &= static_cast<std::uint16_t>(group - 1);
        const int v = -negamax(child_of(n, dest), -beta, -alpha);
        if (v > best) best = v;
        if (best > alpha) alpha = best;
        if (alpha >= beta) break;
      }
    }

    if (memo_enabled_) {
      const Bound b = best <= alpha_in ? Bound::Upper : (best >= beta ? Bound::Lower : Bound::Exact);
      memo_[key] = Entry{static_cast<std::int8_t>(best), b};
    }
    return best;
  }

  // Root search in row-major order; strict improvement keeps the smallest
  // destination among equally scored moves.
  std::pair<int, int> root(const Node& n) {
    const std::uint16_t dests = destinations(n);
    if (dests == 0) return {-std::popcount(n.face_up), -1};
    int best = -kInfinity;
    int best_dest = -1;
    std::uint16_t rest = dests;
    while (rest) {
      const int dest = std::countr_zero(rest);
      rest &= static_cast<std::uint16_t>(rest - 1);
      const int v = -negamax(child_of(n, dest), -kInfinity, -best);
      if (v > best) {
        best = v;
        best_dest = dest;
      }
    }
    return {best, best_dest};
  }

  bool wins(const Node& n) {
    ++g_nodes;
    const std::uint16_t dests = destinations(n);
    for (std::size_t card = 5; card >= 1; --card) {
      std::uint16_t group = dests & by_card_[card];
      while (group) {
        const int dest = std::countr_zero(group);
        group &= static_cast<std::uint16_t>(group - 1);
        if (!wins(child_of(n, dest))) return true;
      }
    }
    return false;
  }

  std::uint64_t count(const Node& n) const {
    std::uint16_t dests = destinations(n);
    if (dests == 0) return 1;
    std::uint64_t total = 0;
    while (dests) {
      const int dest = std::countr_zero(dests);
      dests &= static_cast<std::uint16_t>(dests - 1);
      total += count(child_of(n, dest));
    }
    return total;
  }

 private:
  enum class Bound : std::uint8_t { Exact, Lower, Upper };
  struct Entry {
    std::int8_t value;
    Bound bound;
  };

  static std::uint32_t memo_key(const Node& n) {
    return static_cast<std::uint32_t>(n.face_up) | (static_cast<std::uint32_t>(n.pos[0]) << 16) |
           (static_cast<std::uint32_t>(n.pos[1]) << 20) | (static_cast<std::uint32_t>(n.side) << 24);
  }

  std::array<unsigned, kCells> allowance_{};
  std::array<std::uint16_t, 6> by_card_{};
  bool memo_enabled_;
  std::unordered_map<std::uint32_t, Entry> memo_;
};

int red_view(int mover_value, Player to_move) { return to_move == Player::Red ? mover_value : -mover_value; }

Move move_to(const GameState& state, int dest) {
  for (Move& m : legal_moves(state)) {
    if (m.dest.index() == dest) return std::move(m);
  }
  throw InvalidState("solver chose an unreachable destination");
}

}  // namespace

SolveResult solve_score(const GameState& state, const SolveOptions& options) {
  g_nodes = 0;
  Searcher searcher(state.deal, options.memo);
  const auto [value, dest] = searcher.root(to_node(state));
  SolveResult result{Score(red_view(value, state.to_move)), std::nullopt, std::nullopt};
  if (dest >= 0) result.best_move = move_to(state, dest);

  if (options.principal_variation) {
    const std::uint64_t nodes = g_nodes;
    std::vector<Move> pv;
    GameState at = state;
    std::optional<Move> next = result.best_move;
    while (next) {
      at = advance(at, next->dest);
      pv.push_back(std::move(*next));
      Searcher follow(at.deal, options.memo);
      const int d = follow.root(to_node(at)).second;
      next = d >= 0 ? std::optional<Move>(move_to(at, d)) : std::nullopt;
    }
    result.principal_variation = std::move(pv);
    g_nodes = nodes;
  }
  return result;
}

int solve_value(const GameState& state, bool memo) {
  g_nodes = 0;
  Searcher searcher(state.deal, memo);
  return red_view(searcher.negamax(to_node(state), -kInfinity, kInfinity), state.to_move);
}

WinResult solve_win(const GameState& state) {
  g_nodes = 0;
  Searcher searcher(state.deal, false);
  const Node root = to_node(state);
  std::uint16_t dests = searcher.destinations(root);
  while (dests) {
    const int dest = std::countr_zero(dests);
    dests &= static_cast<std::uint16_t>(dests - 1);
    if (!searcher.wins(child_of(root, dest))) return {true, move_to(state, dest)};
  }
  return {false, std::nullopt};
}

int plies_to_end(const GameState& initial, const SolveResult& result) {
  if (initial.face_up != kAllFaceUp) throw InvalidState("plies_to_end needs a fresh deal with all cards face-up");
  return kCells - result.score.face_up();
}

std::uint64_t count_games(const GameState& state) {
  Searcher searcher(state.deal, false);
  return searcher.count(to_node(state));
}

std::uint64_t last_search_nodes() { return g_nodes; }

}  // namespace collapsi

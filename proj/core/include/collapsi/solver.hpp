#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collapsi/engine.hpp"

namespace collapsi {

/// Game-length-perfect value of a position from red's point of view.
///
/// The magnitude is the number of cards still face-up when the game ends and
/// the sign names the winner (+ red, - blue). Red maximises, blue minimises:
/// the winner wants many cards left (a short game) and the loser wants few.
class Score {
 public:
  /// Throws OutOfRange unless |value| is in 2..16.
  explicit Score(int value);

  int value() const { return value_; }
  int face_up() const { return value_ < 0 ? -value_ : value_; }
  Player winner() const { return value_ > 0 ? Player::Red : Player::Blue; }

  friend auto operator<=>(const Score&, const Score&) = default;

 private:
  int value_;
};

struct SolveOptions {
  /// Follow best moves to the end of the game.
  bool principal_variation = false;
  /// Search-local transposition memo. Never changes results.
  bool memo = false;
};

struct SolveResult {
  Score score;
  std::optional<Move> best_move;  // absent iff the input is terminal
  std::optional<std::vector<Move>> principal_variation;
};

/// Exact minimax value with alpha-beta pruning over the full tree.
/// Among equally good moves the smallest destination (row-major) is returned.
SolveResult solve_score(const GameState& state, const SolveOptions& options = {});

/// Minimax value only; same as solve_score(state).score.value().
int solve_value(const GameState& state, bool memo = false);

struct WinResult {
  bool mover_wins = false;
  std::optional<Move> witness;  // present iff mover_wins and not terminal
};

/// Win/loss search without length optimisation.
WinResult solve_win(const GameState& state);

/// 16 - |score|. Throws InvalidState unless `initial` has all 16 cards face-up.
int plies_to_end(const GameState& initial, const SolveResult& result);

/// Number of complete games from `state`, moves identified by destination.
std::uint64_t count_games(const GameState& state);

/// Nodes visited by the most recent solve on this thread (diagnostic).
std::uint64_t last_search_nodes();

}  // namespace collapsi

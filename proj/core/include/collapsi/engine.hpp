#pragma once

// Board representation and rules for Collapsi on the 4x4 torus.
//
// Cells are indexed row-major: index = 4 * row + col, (0,0) top-left.
// A face-up mask carries one bit per cell index (1 = face-up).

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace collapsi {

inline constexpr int kSide = 4;
inline constexpr int kCells = kSide * kSide;
inline constexpr std::uint16_t kAllFaceUp = 0xFFFF;

/// Ordering Ace < Two < Three < Four < Joker is used for canonical forms.
enum class Card : std::uint8_t { Ace = 1, Two = 2, Three = 3, Four = 4, Joker = 5 };

/// Step allowance as a bit set: bit L set means a move of exactly L steps.
constexpr unsigned step_allowance(Card card) {
  return card == Card::Joker ? 0b11110u : (1u << static_cast<unsigned>(card));
}

/// Number of copies of each card in a deal, indexed by the Card value.
inline constexpr std::array<int, 6> kCardCounts = {0, 4, 4, 4, 2, 2};

enum class Player : std::uint8_t { Red = 0, Blue = 1 };

constexpr Player opponent(Player p) { return p == Player::Red ? Player::Blue : Player::Red; }

enum class Direction : std::uint8_t { Up, Down, Left, Right };

struct Coord {
  int row = 0;
  int col = 0;

  constexpr int index() const { return kSide * row + col; }
  static constexpr Coord from_index(int index) { return {index / kSide, index % kSide}; }

  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

constexpr std::uint16_t cell_bit(int index) { return static_cast<std::uint16_t>(1u << index); }
constexpr std::uint16_t cell_bit(Coord c) { return cell_bit(c.index()); }

Coord torus_step(Coord c, Direction dir);

/// A 4x4 layout of cards. Construction does not validate; see validate_deal.
struct Deal {
  std::array<Card, kCells> cells{};

  Card at(Coord c) const { return cells[c.index()]; }
  Card& at(Coord c) { return cells[c.index()]; }

  friend auto operator<=>(const Deal&, const Deal&) = default;
};

/// Throws MultisetViolation unless the deal holds exactly the 16-card multiset.
void validate_deal(const Deal& deal);

struct GameState {
  Deal deal;
  std::uint16_t face_up = kAllFaceUp;
  Coord red;
  Coord blue;
  Player to_move = Player::Red;

  Coord pawn(Player p) const { return p == Player::Red ? red : blue; }
  int face_up_count() const { return std::popcount(face_up); }
  bool is_face_up(Coord c) const { return (face_up & cell_bit(c)) != 0; }

  friend bool operator==(const GameState&, const GameState&) = default;
};

/// Throws the matching named error if any GameState invariant fails
/// (deal multiset, pawn collision, pawn on face-down cell, ply parity).
void validate_state(const GameState& state);

/// Red on the first joker in row-major order, blue on the second, red to move.
GameState initial_state(const Deal& deal);

/// A move is identified by its destination; `path` is one witness route
/// (the cells entered, in order, ending at `dest`).
struct Move {
  Coord dest;
  std::vector<Coord> path;

  int length() const { return static_cast<int>(path.size()); }

  friend bool operator==(const Move&, const Move&) = default;
};

/// Bit set of reachable destinations for the side to move.
std::uint16_t destination_mask(const GameState& state);

/// One move per reachable destination, in row-major destination order. Each
/// witness path is the shortest legal route, ties broken lexicographically.
std::vector<Move> legal_moves(const GameState& state);

/// Throws IllegalMove unless the destination is reachable and, when a path is
/// supplied, the path itself is a legal route to it.
GameState apply_move(const GameState& state, const Move& move);

/// Unchecked transition used by search: `dest` must be in destination_mask.
GameState advance(const GameState& state, Coord dest);

bool is_terminal(const GameState& state);

/// +face_up_count if blue is stuck, -face_up_count if red is stuck.
/// Throws InvalidState for a non-terminal state.
int terminal_score(const GameState& state);

namespace rules {

/// The mover's starting cell may not be re-entered during its own move.
inline constexpr bool kOriginCountsAsVisited = true;

/// Paths may cross the opponent's cell; only ending there is forbidden.
inline constexpr bool kPassThroughOpponent = true;

/// Whether a route whose interior (cells entered before the last) is
/// `interior` may be taken with the opponent on `opponent_bit`.
constexpr bool interior_allowed(std::uint16_t interior, std::uint16_t opponent_bit) {
  return kPassThroughOpponent || (interior & opponent_bit) == 0;
}

}  // namespace rules

}  // namespace collapsi

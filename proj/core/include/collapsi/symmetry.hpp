#pragma once

// The 128 symmetries of the 4x4 torus that preserve orthogonal adjacency:
// 16 translations followed by one of the 8 square symmetries.

#include <array>
#include <compare>
#include <cstdint>
#include <utility>

#include "collapsi/engine.hpp"

namespace collapsi {

enum class Dihedral : std::uint8_t {
  Identity,
  Rotate90,
  Rotate180,
  Rotate270,
  FlipHorizontal,  // mirror columns
  FlipVertical,    // mirror rows
  Transpose,
  AntiTranspose,
};

struct Symmetry {
  int row_shift = 0;
  int col_shift = 0;
  Dihedral dihedral = Dihedral::Identity;

  /// Shift by (row_shift, col_shift) then apply the dihedral map.
  Coord apply(Coord c) const;

  static constexpr Symmetry identity() { return {}; }

  friend constexpr auto operator<=>(const Symmetry&, const Symmetry&) = default;
};

inline constexpr int kSymmetryCount = 128;

/// All 128 elements in a fixed order (dihedral-major, then row, then col shift).
const std::array<Symmetry, kSymmetryCount>& all_symmetries();

/// (a ∘ b)(c) = a(b(c)).
Symmetry compose(const Symmetry& a, const Symmetry& b);
Symmetry inverse(const Symmetry& t);

Deal transform(const Deal& deal, const Symmetry& t);
GameState transform(const GameState& state, const Symmetry& t);
std::uint16_t transform_mask(std::uint16_t mask, const Symmetry& t);

/// Cells eligible for the second joker once the first sits at (0,0).
inline constexpr std::array<Coord, 5> kJokerRepresentatives = {
    Coord{0, 1}, Coord{0, 2}, Coord{1, 1}, Coord{1, 2}, Coord{2, 2}};

/// Lexicographically smallest image (row-major, A < 2 < 3 < 4 < J) among the
/// symmetries that put a joker at (0,0) and the other on a representative cell.
std::pair<Deal, Symmetry> canonicalize(const Deal& deal);

}  // namespace collapsi

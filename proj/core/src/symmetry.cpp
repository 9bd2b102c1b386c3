#include "collapsi/symmetry.hpp"

#include <algorithm>
#include <optional>

namespace collapsi {

namespace {

constexpr int kMax = kSide - 1;

Coord dihedral_map(Coord c, Dihedral d) {
  switch (d) {
    case Dihedral::Identity:
      return c;
    case Dihedral::Rotate90:
      return {c.col, kMax - c.row};
    case Dihedral::Rotate180:
      return {kMax - c.row, kMax - c.col};
    case Dihedral::Rotate270:
      return {kMax - c.col, c.row};
    case Dihedral::FlipHorizontal:
      return {c.row, kMax - c.col};
    case Dihedral::FlipVertical:
      return {kMax - c.row, c.col};
    case Dihedral::Transpose:
      return {c.col, c.row};
    case Dihedral::AntiTranspose:
      return {kMax - c.col, kMax - c.row};
  }
  return c;
}

using Permutation = std::array<std::uint8_t, kCells>;

Permutation permutation_of(const Symmetry& t) {
  Permutation p{};
  for (int i = 0; i < kCells; ++i) p[i] = static_cast<std::uint8_t>(t.apply(Coord::from_index(i)).index());
  return p;
}

struct SymmetryTables {
  std::array<Symmetry, kSymmetryCount> elements{};
  std::array<Permutation, kSymmetryCount> perms{};
};

const SymmetryTables& tables() {
  static const SymmetryTables t = [] {
    SymmetryTables out;
    int k = 0;
    for (int d = 0; d < 8; ++d) {
      for (int r = 0; r < kSide; ++r) {
        for (int c = 0; c < kSide; ++c) {
          out.elements[k] = Symmetry{r, c, static_cast<Dihedral>(d)};
          out.perms[k] = permutation_of(out.elements[k]);
          ++k;
        }
      }
    }
    return out;
  }();
  return t;
}

Symmetry from_permutation(const Permutation& p) {
  const auto& t = tables();
  for (int k = 0; k < kSymmetryCount; ++k) {
    if (t.perms[k] == p) return t.elements[k];
  }
  // Unreachable: the 128 elements form a group.
  return Symmetry::identity();
}

}  // namespace

Coord Symmetry::apply(Coord c) const {
  return dihedral_map({(c.row + row_shift) % kSide, (c.col + col_shift) % kSide}, dihedral);
}

const std::array<Symmetry, kSymmetryCount>& all_symmetries() { return tables().elements; }

Symmetry compose(const Symmetry& a, const Symmetry& b) {
  Permutation p{};
  for (int i = 0; i < kCells; ++i) p[i] = static_cast<std::uint8_t>(a.apply(b.apply(Coord::from_index(i))).index());
  return from_permutation(p);
}

Symmetry inverse(const Symmetry& t) {
  Permutation p{};
  for (int i = 0; i < kCells; ++i) p[t.apply(Coord::from_index(i)).index()] = static_cast<std::uint8_t>(i);
  return from_permutation(p);
}

Deal transform(const Deal& deal, const Symmetry& t) {
  Deal out;
  for (int i = 0; i < kCells; ++i) out.cells[t.apply(Coord::from_index(i)).index()] = deal.cells[i];
  return out;
}

std::uint16_t transform_mask(std::uint16_t mask, const Symmetry& t) {
  std::uint16_t out = 0;
  for (int i = 0; i < kCells; ++i) {
    if (mask & cell_bit(i)) out = static_cast<std::uint16_t>(out | cell_bit(t.apply(Coord::from_index(i))));
  }
  return out;
}

GameState transform(const GameState& state, const Symmetry& t) {
  GameState out = state;
  out.deal = transform(state.deal, t);
  out.face_up = transform_mask(state.face_up, t);
  out.red = t.apply(state.red);
  out.blue = t.apply(state.blue);
  return out;
}

std::pair<Deal, Symmetry> canonicalize(const Deal& deal) {
  std::optional<std::pair<Deal, Symmetry>> best;
  for (const Symmetry& t : all_symmetries()) {
    Deal image = transform(deal, t);
    if (image.cells[0] != Card::Joker) continue;
    const bool placed = std::any_of(kJokerRepresentatives.begin(), kJokerRepresentatives.end(),
                                    [&](Coord c) { return image.at(c) == Card::Joker; });
    if (!placed) continue;
    if (!best || image.cells < best->first.cells) best.emplace(image, t);
  }
  // Every valid deal has such an image; a deal without two jokers maps to itself.
  return best ? *best : std::pair{deal, Symmetry::identity()};
}

}  // namespace collapsi

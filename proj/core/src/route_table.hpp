#pragma once

// Precomputed simple routes on the 4x4 torus, shared by move generation and
// search. A route of length L from an origin is a sequence of L orthogonal
// steps with no repeated cell.

#include <array>
#include <cstdint>
#include <vector>

#include "collapsi/engine.hpp"

namespace collapsi::detail {

struct Route {
  std::uint16_t entered = 0;   // every cell entered, destination included
  std::uint16_t interior = 0;  // entered minus the destination
  std::uint8_t dest = 0;
  std::uint8_t length = 0;
  std::array<std::uint8_t, 4> cells{};
};

struct RouteTable {
  // all[origin][L]: every route, sorted lexicographically by cells.
  std::array<std::array<std::vector<Route>, 5>, kCells> all;
  // minimal[origin][L]: routes whose entered set has no proper subset among
  // routes to the same destination. Enough to decide reachability.
  std::array<std::array<std::vector<Route>, 5>, kCells> minimal;
};

const RouteTable& route_table();

inline std::uint16_t reachable(int origin, unsigned allowance, std::uint16_t face_up,
                               std::uint16_t opponent_bit) {
  const auto& table = route_table().minimal[origin];
  std::uint16_t dests = 0;
  for (unsigned len = 1; len <= 4; ++len) {
    if ((allowance & (1u << len)) == 0) continue;
    for (const Route& r : table[len]) {
      if ((r.entered & ~face_up) == 0 && rules::interior_allowed(r.interior, opponent_bit)) {
        dests |= cell_bit(r.dest);
      }
    }
  }
  return static_cast<std::uint16_t>(dests & ~opponent_bit & ~cell_bit(origin));
}

}  // namespace collapsi::detail

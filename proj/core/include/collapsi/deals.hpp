#pragma once

// Symmetry-reduced enumeration of deals. One joker is fixed at (0,0), the
// other at one of five representative cells; the remaining 14 cells are
// filled by unranking (aces, then 2s, then 3s; the two 4s take the rest).

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "collapsi/engine.hpp"

namespace collapsi {

std::uint64_t binomial(unsigned n, unsigned k);

/// Lexicographic rank of a sorted k-subset of {0..n-1}.
std::uint64_t rank_combination(const std::vector<int>& subset, unsigned n);
/// Inverse of rank_combination. Throws OutOfRange if rank >= C(n,k).
std::vector<int> unrank_combination(std::uint64_t rank, unsigned n, unsigned k);

struct JokerClass {
  Coord representative;
  int weight;
};

/// (0,1) w4, (0,2) w2, (1,1) w4, (1,2) w4, (2,2) w1.
inline constexpr std::array<JokerClass, 5> kJokerClasses = {
    JokerClass{{0, 1}, 4}, JokerClass{{0, 2}, 2}, JokerClass{{1, 1}, 4}, JokerClass{{1, 2}, 4},
    JokerClass{{2, 2}, 1}};

/// C(14,4) * C(10,4) * C(6,4).
std::uint64_t fills_per_class();
/// 5 * fills_per_class().
std::uint64_t enumeration_total();
/// fills_per_class() * sum of class weights.
std::uint64_t weighted_total();

struct DealIndex {
  int joker_class = 0;
  std::uint64_t fill_rank = 0;

  std::uint64_t global() const;
  static DealIndex from_global(std::uint64_t index);

  friend auto operator<=>(const DealIndex&, const DealIndex&) = default;
};

/// Throws OutOfRange for an index outside the enumeration.
Deal deal_at(DealIndex index);

/// Recovers the index of an enumerated deal. Throws OutOfRange if the deal is
/// not in enumeration form.
DealIndex index_of(const Deal& deal);

struct ShardSpec {
  std::uint64_t index = 0;
  std::uint64_t count = 1;

  /// Parses "k/n"; throws MalformedText.
  static ShardSpec parse(const std::string& text);
  std::string to_string() const;
  /// Number of global indices i with i mod count == index.
  std::uint64_t size() const;
  /// Global index of the shard-local ordinal `position`.
  std::uint64_t global_index(std::uint64_t position) const { return index + position * count; }
  friend bool operator==(const ShardSpec&, const ShardSpec&) = default;
};

struct EnumeratedDeal {
  DealIndex index;
  Deal deal;
  int weight;
};

/// Calls `visit` for every deal in the shard in increasing index order.
void enumerate(const ShardSpec& shard, const std::function<void(const EnumeratedDeal&)>& visit);

/// Seeded generator; std::mt19937_64 output is fixed by the standard, and the
/// shuffle below avoids the implementation-defined std distributions.
using DealRng = std::mt19937_64;

/// Uniform random permutation of the 16-card multiset, laid out row-major.
Deal random_deal(DealRng& rng);

/// Unbiased integer in [0, bound).
std::uint64_t uniform_below(DealRng& rng, std::uint64_t bound);

}  // namespace collapsi

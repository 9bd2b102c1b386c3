#include "collapsi/deals.hpp"

#include <algorithm>
#include <charconv>

#include "collapsi/errors.hpp"

namespace collapsi {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t rank_combination(const std::vector<int>& subset, unsigned n) {
  const auto k = static_cast<unsigned>(subset.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (unsigned i = 0; i < k; ++i) {
    // Count the subsets that agree on the first i elements and pick a smaller i-th one.
    for (int v = prev + 1; v < subset[i]; ++v) rank += binomial(n - 1 - static_cast<unsigned>(v), k - 1 - i);
    prev = subset[i];
  }
  return rank;
}

std::vector<int> unrank_combination(std::uint64_t rank, unsigned n, unsigned k) {
  if (rank >= binomial(n, k)) throw OutOfRange("combination rank out of range");
  std::vector<int> out;
  out.reserve(k);
  int v = 0;
  for (unsigned i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binomial(n - 1 - static_cast<unsigned>(v), k - 1 - i);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(v++);
  }
  return out;
}

namespace {

constexpr unsigned kFree = 14;

std::uint64_t class_weight_sum() {
  std::uint64_t w = 0;
  for (const auto& c : kJokerClasses) w += static_cast<std::uint64_t>(c.weight);
  return w;
}

// Free cells (row-major) of a deal with jokers at (0,0) and `second`.
std::array<int, kFree> free_cells(Coord second) {
  std::array<int, kFree> out{};
  int k = 0;
  for (int i = 1; i < kCells; ++i) {
    if (i != second.index()) out[k++] = i;
  }
  return out;
}

// Places `card` on the chosen positions of `slots` and removes them.
void place(Deal& deal, std::vector<int>& slots, const std::vector<int>& chosen, Card card) {
  std::vector<int> rest;
  rest.reserve(slots.size() - chosen.size());
  std::size_t c = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (c < chosen.size() && chosen[c] == static_cast<int>(i)) {
      deal.cells[slots[i]] = card;
      ++c;
    } else {
      rest.push_back(slots[i]);
    }
  }
  slots = std::move(rest);
}

}  // namespace

std::uint64_t fills_per_class() { return binomial(14, 4) * binomial(10, 4) * binomial(6, 4); }

std::uint64_t enumeration_total() { return kJokerClasses.size() * fills_per_class(); }

std::uint64_t weighted_total() { return fills_per_class() * class_weight_sum(); }

std::uint64_t DealIndex::global() const {
  return static_cast<std::uint64_t>(joker_class) * fills_per_class() + fill_rank;
}

DealIndex DealIndex::from_global(std::uint64_t index) {
  const std::uint64_t per = fills_per_class();
  return {static_cast<int>(index / per), index % per};
}

Deal deal_at(DealIndex index) {
  if (index.joker_class < 0 || index.joker_class >= static_cast<int>(kJokerClasses.size()) ||
      index.fill_rank >= fills_per_class()) {
    throw OutOfRange("deal index out of range");
  }
  const std::uint64_t threes = binomial(6, 4);
  const std::uint64_t twos = binomial(10, 4);
  const std::uint64_t three_rank = index.fill_rank % threes;
  const std::uint64_t two_rank = (index.fill_rank / threes) % twos;
  const std::uint64_t ace_rank = index.fill_rank / threes / twos;

  Deal deal;
  const Coord second = kJokerClasses[index.joker_class].representative;
  deal.cells[0] = Card::Joker;
  deal.at(second) = Card::Joker;
  const auto cells = free_cells(second);
  std::vector<int> slots(cells.begin(), cells.end());
  place(deal, slots, unrank_combination(ace_rank, 14, 4), Card::Ace);
  place(deal, slots, unrank_combination(two_rank, 10, 4), Card::Two);
  place(deal, slots, unrank_combination(three_rank, 6, 4), Card::Three);
  for (int s : slots) deal.cells[s] = Card::Four;
  return deal;
}

DealIndex index_of(const Deal& deal) {
  validate_deal(deal);
  if (deal.cells[0] != Card::Joker) throw OutOfRange("deal has no joker at (0,0)");
  int cls = -1;
  for (std::size_t c = 0; c < kJokerClasses.size(); ++c) {
    if (deal.at(kJokerClasses[c].representative) == Card::Joker) cls = static_cast<int>(c);
  }
  if (cls < 0) throw OutOfRange("second joker is not on a representative cell");
  const auto cells = free_cells(kJokerClasses[cls].representative);
  std::vector<int> slots(cells.begin(), cells.end());
  std::uint64_t rank = 0;
  for (Card card : {Card::Ace, Card::Two, Card::Three}) {
    std::vector<int> chosen;
    std::vector<int> rest;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (deal.cells[slots[i]] == card) {
        chosen.push_back(static_cast<int>(i));
      } else {
        rest.push_back(slots[i]);
      }
    }
    rank = rank * binomial(static_cast<unsigned>(slots.size()), 4) +
           rank_combination(chosen, static_cast<unsigned>(slots.size()));
    slots = std::move(rest);
  }
  return {cls, rank};
}

ShardSpec ShardSpec::parse(const std::string& text) {
  const auto slash = text.find('/');
  ShardSpec s;
  auto read = [&](std::string_view part, std::uint64_t& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && ptr == part.data() + part.size() && !part.empty();
  };
  const std::string_view view(text);
  if (slash == std::string::npos || !read(view.substr(0, slash), s.index) ||
      !read(view.substr(slash + 1), s.count) || s.count == 0 || s.index >= s.count) {
    throw MalformedText("shard must be k/n with 0 <= k < n, got '" + text + "'");
  }
  return s;
}

std::string ShardSpec::to_string() const { return std::to_string(index) + "/" + std::to_string(count); }

std::uint64_t ShardSpec::size() const {
  const std::uint64_t total = enumeration_total();
  return index >= total ? 0 : (total - index + count - 1) / count;
}

void enumerate(const ShardSpec& shard, const std::function<void(const EnumeratedDeal&)>& visit) {
  const std::uint64_t n = shard.size();
  for (std::uint64_t p = 0; p < n; ++p) {
    const DealIndex idx = DealIndex::from_global(shard.global_index(p));
    visit({idx, deal_at(idx), kJokerClasses[idx.joker_class].weight});
  }
}

std::uint64_t uniform_below(DealRng& rng, std::uint64_t bound) {
  // Rejection sampling on the top of the range.
  const std::uint64_t limit = DealRng::max() - (DealRng::max() % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Deal random_deal(DealRng& rng) {
  Deal deal;
  int k = 0;
  for (std::size_t card = 1; card < kCardCounts.size(); ++card) {
    for (int c = 0; c < kCardCounts[card]; ++c) deal.cells[k++] = static_cast<Card>(card);
  }
  for (int i = kCells - 1; i > 0; --i) {
    const auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(deal.cells[i], deal.cells[j]);
  }
  return deal;
}

}  // namespace collapsi

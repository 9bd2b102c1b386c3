#pragma once

// Batch solving over enumerated or sampled deals.
//
// Results never depend on the worker count: every deal is solved
// independently and the aggregation is a commutative sum.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collapsi/deals.hpp"
#include "collapsi/stats.hpp"

namespace collapsi {

/// Resolves 0 to the hardware concurrency (at least 1).
unsigned resolve_workers(unsigned requested);

/// Red-perspective solve_score value of each deal's initial state, in input order.
std::vector<int> solve_deals(std::span<const Deal> deals, unsigned workers);

struct Checkpoint {
  ShardSpec shard;
  std::uint64_t position = 0;  // shard-local deals completed
  DealStats stats;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Atomic write (temporary file + rename) with an embedded SHA-256 digest.
/// Throws IoError if the file cannot be written.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

/// std::nullopt when no file exists. Throws CheckpointError when the file is
/// unreadable, malformed, or its digest does not match its contents.
std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path);

std::string sha256_hex(const std::string& data);

struct ExhaustiveOptions {
  ShardSpec shard;
  unsigned workers = 0;
  std::filesystem::path checkpoint;  // empty: no checkpointing
  std::uint64_t block_size = 10'000;
  /// Stop (as if interrupted) after this many blocks in this invocation.
  std::optional<std::uint64_t> stop_after_blocks;
  bool progress = false;
};

struct ExhaustiveResult {
  DealStats stats;
  bool complete = false;
  std::uint64_t position = 0;
};

/// Solves every deal of the shard, resuming from the checkpoint when present.
/// Throws CheckpointError if the checkpoint belongs to another shard.
ExhaustiveResult run_exhaustive(const ExhaustiveOptions& options);

struct SampleOptions {
  std::uint64_t n = 1;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool progress = false;
};

/// The n deals drawn in order from DealRng(seed).
std::vector<Deal> sample_deals(std::uint64_t n, std::uint64_t seed);

/// Solves n uniform random deals, each with weight 1.
DealStats run_sample(const SampleOptions& options);

}  // namespace collapsi

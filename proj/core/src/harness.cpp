#include "collapsi/harness.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "collapsi/errors.hpp"
#include "collapsi/solver.hpp"

namespace collapsi {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Progress {
  bool enabled = false;
  std::uint64_t total = 0;
  std::uint64_t already_done = 0;
  Clock::time_point started = Clock::now();

  void report(std::uint64_t done) const {
    if (!enabled) return;
    const double secs = std::chrono::duration<double>(Clock::now() - started).count();
    const double rate = secs > 0 ? static_cast<double>(done) / secs : 0.0;
    std::cerr << fmt::format("\r{}/{} deals ({:.1f} deals/s)", already_done + done, total, rate) << std::flush;
  }
};

// Runs solve on `deals` with a shared index counter; the calling thread
// reports progress until all workers finish.
std::vector<int> solve_parallel(std::span<const Deal> deals, unsigned workers, const Progress* progress) {
  std::vector<int> scores(deals.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < deals.size(); i = next++) {
        scores[i] = solve_value(initial_state(deals[i]));
        if (++done == deals.size()) {
          std::lock_guard lock(mu);
          cv.notify_all();
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = deals.size();
      cv.notify_all();
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(deals.size())));
  {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    std::unique_lock lock(mu);
    while (!cv.wait_for(lock, std::chrono::seconds(1),
                        [&] { return done.load() == deals.size() || failure != nullptr; })) {
      if (progress) progress->report(done.load());
    }
  }
  if (failure) std::rethrow_exception(failure);
  return scores;
}

}  // namespace

std::vector<int> solve_deals(std::span<const Deal> deals, unsigned workers) {
  return solve_parallel(deals, resolve_workers(workers), nullptr);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

namespace {

constexpr const char* kCheckpointFormat = "collapsi-checkpoint/1";

nlohmann::json checkpoint_payload(const Checkpoint& cp) {
  return {{"format", kCheckpointFormat},
          {"shard", cp.shard.to_string()},
          {"position", cp.position},
          {"last_completed_index",
           cp.position == 0 ? nlohmann::json(nullptr) : nlohmann::json(cp.shard.global_index(cp.position - 1))},
          {"stats", stats_to_json(cp.stats)}};
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  const nlohmann::json payload = checkpoint_payload(cp);
  const nlohmann::json doc = {{"payload", payload}, {"digest", sha256_hex(payload.dump())}};
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    out << doc.dump() << '\n';
    out.flush();
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto doc = nlohmann::json::parse(buf.str());
    const auto& payload = doc.at("payload");
    if (sha256_hex(payload.dump()) != doc.at("digest").get<std::string>()) {
      throw CheckpointError("checkpoint digest mismatch in " + path.string());
    }
    if (payload.at("format").get<std::string>() != kCheckpointFormat) {
      throw CheckpointError("unknown checkpoint format in " + path.string());
    }
    Checkpoint cp;
    cp.shard = ShardSpec::parse(payload.at("shard").get<std::string>());
    cp.position = payload.at("position").get<std::uint64_t>();
    cp.stats = stats_from_json(payload.at("stats"));
    if (cp.position > cp.shard.size() || cp.stats.deals_processed != cp.position) {
      throw CheckpointError("inconsistent checkpoint " + path.string());
    }
    return cp;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError("corrupted checkpoint " + path.string() + ": " + e.what());
  }
}

ExhaustiveResult run_exhaustive(const ExhaustiveOptions& options) {
  const ShardSpec shard = options.shard;
  const std::uint64_t total = shard.size();
  const unsigned workers = resolve_workers(options.workers);
  const std::uint64_t block = std::max<std::uint64_t>(1, options.block_size);

  Checkpoint cp{shard, 0, {}};
  if (!options.checkpoint.empty()) {
    if (auto loaded = load_checkpoint(options.checkpoint)) {
      if (loaded->shard.index != shard.index || loaded->shard.count != shard.count) {
        throw CheckpointError("checkpoint is for shard " + loaded->shard.to_string() + ", not " + shard.to_string());
      }
      cp = *loaded;
    } else {
      save_checkpoint(options.checkpoint, cp);
    }
  }

  Progress progress{options.progress, total, cp.position, Clock::now()};
  std::uint64_t blocks_run = 0;
  std::vector<Deal> deals;
  std::vector<int> weights;
  while (cp.position < total) {
    if (options.stop_after_blocks && blocks_run >= *options.stop_after_blocks) break;
    const std::uint64_t end = std::min(total, cp.position + block);
    deals.clear();
    weights.clear();
    for (std::uint64_t p = cp.position; p < end; ++p) {
      const DealIndex idx = DealIndex::from_global(shard.global_index(p));
      deals.push_back(deal_at(idx));
      weights.push_back(kJokerClasses[idx.joker_class].weight);
    }
    const auto scores = solve_parallel(deals, workers, &progress);
    for (std::size_t i = 0; i < scores.size(); ++i) cp.stats.record(scores[i], static_cast<std::uint64_t>(weights[i]));
    cp.position = end;
    ++blocks_run;
    progress.already_done = cp.position;
    progress.started = Clock::now();
    progress.report(0);
    if (!options.checkpoint.empty()) save_checkpoint(options.checkpoint, cp);
  }
  if (options.progress) std::cerr << '\n';
  return {cp.stats, cp.position == total, cp.position};
}

std::vector<Deal> sample_deals(std::uint64_t n, std::uint64_t seed) {
  DealRng rng(seed);
  std::vector<Deal> deals;
  deals.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) deals.push_back(random_deal(rng));
  return deals;
}

DealStats run_sample(const SampleOptions& options) {
  const auto deals = sample_deals(options.n, options.seed);
  Progress progress{options.progress, options.n, 0, Clock::now()};
  const auto scores = solve_parallel(deals, resolve_workers(options.workers), &progress);
  if (options.progress) std::cerr << '\n';
  DealStats stats;
  for (int s : scores) stats.record(s, 1);
  return stats;
}

}  // namespace collapsi

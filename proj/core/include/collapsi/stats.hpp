#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace collapsi {

/// Weighted game-length histogram over solved fresh deals.
struct DealStats {
  /// Bucket 0 collects games of six plies or fewer; bucket b >= 1 is 6 + b plies.
  static constexpr int kBuckets = 9;

  std::array<std::uint64_t, kBuckets> histogram{};
  std::uint64_t red_wins = 0;
  std::uint64_t blue_wins = 0;
  std::uint64_t deals_processed = 0;

  static int bucket_of(int plies) { return plies <= 6 ? 0 : plies - 6; }
  /// "<=6", "7", ..., "14".
  static std::string bucket_label(int bucket);

  /// Adds one solved fresh deal with red-perspective score `score_value`.
  void record(int score_value, std::uint64_t weight);
  DealStats& merge(const DealStats& other);
  std::uint64_t total_weight() const;

  friend bool operator==(const DealStats&, const DealStats&) = default;
};

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& text);

struct ReportMetadata {
  std::string mode;  // "exhaustive" or "sample"
  std::optional<std::string> shard;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> sample_size;
};

/// Library version, as recorded in report metadata.
const char* version();

/// `plies,weighted_count,percent` with one row per bucket; header only when
/// the stats are empty. Percentages carry one decimal place.
std::string to_csv(const DealStats& stats);

/// Binomial standard error of each bucket's proportion, treating every
/// processed deal as one unit-weight trial.
std::array<double, DealStats::kBuckets> bucket_standard_errors(const DealStats& stats);
double red_win_standard_error(const DealStats& stats);

nlohmann::json to_json(const DealStats& stats, const ReportMetadata& meta, bool with_standard_errors = false);
nlohmann::json stats_to_json(const DealStats& stats);
/// Reads the stats part of either a report or a bare stats object.
DealStats stats_from_json(const nlohmann::json& doc);

std::string emit_report(const DealStats& stats, ReportFormat format, const ReportMetadata& meta,
                        bool with_standard_errors = false);

}  // namespace collapsi

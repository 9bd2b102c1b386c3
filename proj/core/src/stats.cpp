#include "collapsi/stats.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "collapsi/errors.hpp"

#ifndef COLLAPSI_VERSION
#define COLLAPSI_VERSION "0.0.0"
#endif

namespace collapsi {

const char* version() { return COLLAPSI_VERSION; }

std::string DealStats::bucket_label(int bucket) { return bucket == 0 ? "<=6" : std::to_string(bucket + 6); }

void DealStats::record(int score_value, std::uint64_t weight) {
  const int plies = 16 - std::abs(score_value);
  histogram[static_cast<std::size_t>(bucket_of(plies))] += weight;
  (score_value > 0 ? red_wins : blue_wins) += weight;
  ++deals_processed;
}

DealStats& DealStats::merge(const DealStats& other) {
  for (int b = 0; b < kBuckets; ++b) histogram[b] += other.histogram[b];
  red_wins += other.red_wins;
  blue_wins += other.blue_wins;
  deals_processed += other.deals_processed;
  return *this;
}

std::uint64_t DealStats::total_weight() const {
  std::uint64_t t = 0;
  for (auto v : histogram) t += v;
  return t;
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw MalformedText("report format must be csv or json, got '" + text + "'");
}

namespace {

double percent(std::uint64_t part, std::uint64_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
}

double one_decimal(double x) { return std::round(x * 10.0) / 10.0; }

double binomial_se(std::uint64_t hits, std::uint64_t weight, std::uint64_t trials) {
  if (trials == 0 || weight == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(weight);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace

std::string to_csv(const DealStats& stats) {
  std::string out = "plies,weighted_count,percent\n";
  const std::uint64_t total = stats.total_weight();
  if (total == 0) return out;
  for (int b = 0; b < DealStats::kBuckets; ++b) {
    out += fmt::format("{},{},{:.1f}\n", DealStats::bucket_label(b), stats.histogram[b],
                       percent(stats.histogram[b], total));
  }
  return out;
}

std::array<double, DealStats::kBuckets> bucket_standard_errors(const DealStats& stats) {
  std::array<double, DealStats::kBuckets> se{};
  for (int b = 0; b < DealStats::kBuckets; ++b) {
    se[b] = binomial_se(stats.histogram[b], stats.total_weight(), stats.deals_processed);
  }
  return se;
}

double red_win_standard_error(const DealStats& stats) {
  return binomial_se(stats.red_wins, stats.total_weight(), stats.deals_processed);
}

nlohmann::json stats_to_json(const DealStats& stats) {
  nlohmann::json hist = nlohmann::json::object();
  for (int b = 0; b < DealStats::kBuckets; ++b) hist[DealStats::bucket_label(b)] = stats.histogram[b];
  return {{"histogram", hist},
          {"red_wins", stats.red_wins},
          {"blue_wins", stats.blue_wins},
          {"deals_processed", stats.deals_processed}};
}

nlohmann::json to_json(const DealStats& stats, const ReportMetadata& meta, bool with_standard_errors) {
  nlohmann::json doc = stats_to_json(stats);
  const std::uint64_t total = stats.total_weight();
  doc["total_weight"] = total;
  nlohmann::json pct = nlohmann::json::object();
  for (int b = 0; b < DealStats::kBuckets; ++b) {
    pct[DealStats::bucket_label(b)] = one_decimal(percent(stats.histogram[b], total));
  }
  doc["percent"] = pct;
  doc["red_win_percent"] = one_decimal(percent(stats.red_wins, total));
  doc["blue_win_percent"] = one_decimal(percent(stats.blue_wins, total));
  if (with_standard_errors) {
    const auto se = bucket_standard_errors(stats);
    nlohmann::json errs = nlohmann::json::object();
    for (int b = 0; b < DealStats::kBuckets; ++b) errs[DealStats::bucket_label(b)] = se[b];
    doc["standard_errors"] = errs;
    doc["red_win_standard_error"] = red_win_standard_error(stats);
  }
  nlohmann::json md = {{"mode", meta.mode}, {"version", version()}};
  if (meta.shard) md["shard"] = *meta.shard;
  if (meta.seed) md["seed"] = *meta.seed;
  if (meta.sample_size) md["n"] = *meta.sample_size;
  doc["metadata"] = md;
  return doc;
}

DealStats stats_from_json(const nlohmann::json& doc) {
  try {
    DealStats s;
    const auto& hist = doc.at("histogram");
    for (int b = 0; b < DealStats::kBuckets; ++b) {
      s.histogram[b] = hist.at(DealStats::bucket_label(b)).get<std::uint64_t>();
    }
    s.red_wins = doc.at("red_wins").get<std::uint64_t>();
    s.blue_wins = doc.at("blue_wins").get<std::uint64_t>();
    s.deals_processed = doc.at("deals_processed").get<std::uint64_t>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedText(std::string("invalid stats document: ") + e.what());
  }
}

std::string emit_report(const DealStats& stats, ReportFormat format, const ReportMetadata& meta,
                        bool with_standard_errors) {
  if (format == ReportFormat::Csv) return to_csv(stats);
  return to_json(stats, meta, with_standard_errors).dump(2) + "\n";
}

}  // namespace collapsi

// collapsi: command-line front end for solving, enumeration and statistics.
//
// Exit codes: 0 success, 1 bad input, 2 I/O failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collapsi/deals.hpp"
#include "collapsi/errors.hpp"
#include "collapsi/harness.hpp"
#include "collapsi/notation.hpp"
#include "collapsi/service.hpp"
#include "collapsi/solver.hpp"
#include "collapsi/stats.hpp"

using namespace collapsi;

namespace {

constexpr int kExitBadInput = 1;
constexpr int kExitIo = 2;

// A bare deal string means the fresh game on that deal.
GameState read_position(const std::vector<std::string>& words) {
  const std::string text = std::accumulate(words.begin(), words.end(), std::string(),
                                           [](std::string a, const std::string& b) { return a.empty() ? b : a + " " + b; });
  if (text.find(' ') == std::string::npos) return initial_state(parse_deal(text));
  return parse_state(text);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

int cmd_solve(const std::vector<std::string>& words, bool win_only, bool memo) {
  const GameState s = read_position(words);
  nlohmann::json out = {{"state", format_state(s)}};
  const auto t0 = std::chrono::steady_clock::now();
  if (win_only) {
    const WinResult r = solve_win(s);
    out["mover_wins"] = r.mover_wins;
    out["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
  } else {
    const SolveResult r = solve_score(s, {.principal_variation = true, .memo = memo});
    out["score"] = r.score.value();
    out["winner"] = r.score.winner() == Player::Red ? "r" : "b";
    out["mover_wins"] = (r.score.value() > 0) == (s.to_move == Player::Red);
    out["best_move"] = r.best_move ? to_json(*r.best_move) : nlohmann::json(nullptr);
    nlohmann::json pv = nlohmann::json::array();
    for (const Move& m : *r.principal_variation) pv.push_back(to_json(m));
    out["principal_variation"] = pv;
    if (s.face_up == kAllFaceUp) out["plies"] = plies_to_end(s, r);
  }
  out["nodes"] = last_search_nodes();
  out["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_enumerate(const std::string& shard_text, bool count_only) {
  const ShardSpec shard = ShardSpec::parse(shard_text);
  std::uint64_t count = 0;
  std::uint64_t weight = 0;
  enumerate(shard, [&](const EnumeratedDeal& e) {
    ++count;
    weight += static_cast<std::uint64_t>(e.weight);
    if (!count_only) {
      std::cout << e.index.global() << '\t' << format_deal(e.deal) << '\t' << e.weight << '\n';
    }
  });
  if (count_only) {
    const nlohmann::json out = {{"shard", shard.to_string()},
                                {"deals", count},
                                {"weight", weight},
                                {"enumeration_total", enumeration_total()},
                                {"weighted_total", weighted_total()}};
    std::cout << out.dump(2) << '\n';
  }
  return 0;
}

int cmd_serve(const std::string& host, int port) {
  GameService service;
  HttpServer server(service);
  const int bound = server.bind(host, port);
  std::cerr << "listening on http://" << host << ':' << bound << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collapsi solver and analysis toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> position;
  bool win_only = false;
  bool memo = false;
  auto* solve = app.add_subcommand("solve", "Solve a position and print the result as JSON");
  solve->add_option("state", position, "State string, or a deal string for the opening position")->required();
  solve->add_flag("--win-only", win_only, "Only decide win/loss for the side to move");
  solve->add_flag("--memo", memo, "Enable the search-local transposition memo");

  std::string shard_text = "0/1";
  bool count_only = false;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List the symmetry-reduced deals of a shard");
  enumerate_cmd->add_option("--shard", shard_text, "Shard k/n")->capture_default_str();
  enumerate_cmd->add_flag("--count-only", count_only, "Print counts instead of deals");

  ExhaustiveOptions ex;
  std::string ex_out = "-";
  std::string ex_format = "csv";
  std::string ex_shard = "0/1";
  std::uint64_t stop_after = 0;
  bool quiet = false;
  auto* exhaustive = app.add_subcommand("exhaustive", "Solve every deal of a shard and report statistics");
  exhaustive->add_option("--shard", ex_shard, "Shard k/n")->capture_default_str();
  exhaustive->add_option("--workers", ex.workers, "Worker threads (0 = all cores)")->capture_default_str();
  exhaustive->add_option("--checkpoint", ex.checkpoint, "Checkpoint file (resumed if present)");
  exhaustive->add_option("--block-size", ex.block_size, "Deals per checkpoint block")->capture_default_str();
  exhaustive->add_option("--stop-after-blocks", stop_after, "Stop after this many blocks (0 = run to the end)");
  exhaustive->add_option("--out", ex_out, "Output file, '-' for stdout")->capture_default_str();
  exhaustive->add_option("--format", ex_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  exhaustive->add_flag("--quiet", quiet, "No progress on stderr");

  SampleOptions sm;
  std::string sm_out = "-";
  std::string sm_format = "json";
  auto* sample = app.add_subcommand("sample", "Solve uniformly random deals and report statistics");
  sample->add_option("-n", sm.n, "Number of deals")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", sm.seed, "Generator seed")->capture_default_str();
  sample->add_option("--workers", sm.workers, "Worker threads (0 = all cores)")->capture_default_str();
  sample->add_option("--out", sm_out, "Output file, '-' for stdout")->capture_default_str();
  sample->add_option("--format", sm_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sample->add_flag("--quiet", quiet, "No progress on stderr");

  std::vector<std::string> count_position;
  auto* count = app.add_subcommand("count-games", "Count complete games from a deal or state");
  count->add_option("deal", count_position, "Deal string (or state string)")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP analysis service");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*solve) return cmd_solve(position, win_only, memo);
    if (*enumerate_cmd) return cmd_enumerate(shard_text, count_only);
    if (*exhaustive) {
      ex.shard = ShardSpec::parse(ex_shard);
      ex.progress = !quiet;
      if (stop_after > 0) ex.stop_after_blocks = stop_after;
      const auto format = parse_report_format(ex_format);
      const ExhaustiveResult r = run_exhaustive(ex);
      if (!r.complete) {
        std::cerr << "stopped at " << r.position << "/" << ex.shard.size() << " deals; resume with the same checkpoint\n";
        return 0;
      }
      write_output(ex_out, emit_report(r.stats, format, {"exhaustive", ex.shard.to_string(), std::nullopt, std::nullopt}));
      return 0;
    }
    if (*sample) {
      sm.progress = !quiet;
      const auto format = parse_report_format(sm_format);
      const DealStats stats = run_sample(sm);
      write_output(sm_out, emit_report(stats, format, {"sample", std::nullopt, sm.seed, sm.n}, true));
      return 0;
    }
    if (*count) {
      const GameState s = read_position(count_position);
      const nlohmann::json out = {{"state", format_state(s)}, {"games", count_games(s)}};
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*serve) return cmd_serve(host, port);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "socassoc/anneal.hpp"
#include "socassoc/config.hpp"
#include "socassoc/matching.hpp"

namespace socassoc {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Seed of one Monte Carlo drop: mix64(mix64(mix64(base) + point) + replication).
std::uint64_t replication_seed(std::uint64_t base, std::uint64_t point, std::uint64_t replication);

/// Independent random streams of one drop.
struct DropSeeds {
  std::uint64_t topology;
  std::uint64_t social;
  std::uint64_t engine;
};
DropSeeds derive_seeds(std::uint64_t drop_seed);

RadioScenario make_radio(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t seed);
SocialGraph make_social_graph(const RunConfig& config, const RadioScenario& radio, std::uint64_t seed);
/// Topology, social graph and game of one drop.
Game make_game(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t drop_seed);

struct MethodOutcome {
  Method method = Method::MaxRssi;
  Matching matching;  ///< final matching, after the post-pass when enabled
  UtilityReport report;
  /// Best-so-far matching of the swap search, before any post-pass.
  Matching search_best;
  UtilityReport search_report;
  int iterations = 0;
  int iterations_to_best = 0;
  int stabilize_swaps = 0;
  bool stable = true;
  std::vector<TraceRow> trace;
};

MethodOutcome solve_baseline(const Game& game);
/// Swap search followed, when configured, by greedy stabilization.
MethodOutcome solve_social(const Game& game, const RunConfig& config, std::uint64_t engine_seed);

struct Drop {
  Game game;
  std::vector<MethodOutcome> outcomes;  ///< in config.methods order
};
Drop run_drop(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t drop_seed);

struct ExperimentSpec {
  RunConfig base;
  SweepSpec sweep;
  int replications = 20;
  std::vector<Method> methods;
  int threads = 0;
  /// When set, checked for writability before any drop runs and filled by emit_results.
  std::optional<std::filesystem::path> out_dir;
  /// Configuration echoed into the JSON summary.
  KeyValueConfig echo;
};

/// Throws ConfigError when the configuration has no sweep block.
ExperimentSpec make_experiment(const RunConfig& config, const KeyValueConfig& echo);

struct ReplicationRow {
  int x = 0;
  int point = 0;
  int replication = 0;
  Method method = Method::MaxRssi;
  std::uint64_t seed = 0;
  double mean_rate = 0.0;  ///< of the swap search output
  double welfare = 0.0;
  int iterations_to_best = 0;
  int unservable = 0;
  double post_pass_welfare = 0.0;  ///< welfare after greedy stabilization (equals welfare when disabled)
  int post_pass_swaps = 0;
};

struct PointAggregate {
  int x = 0;
  Method method = Method::MaxRssi;
  int count = 0;
  double mean_rate = 0.0;
  double std_rate = 0.0;
  double mean_welfare = 0.0;
  double std_welfare = 0.0;
  double mean_iters = 0.0;
  bool std_defined = false;        ///< false with a single replication
  std::optional<double> gain_pct;  ///< rate gain over max-RSSI, social rows only
  std::optional<double> welfare_gain_pct;

  bool operator==(const PointAggregate&) const = default;
};

struct ExperimentResult {
  std::vector<ReplicationRow> rows;
  std::vector<PointAggregate> aggregates;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Per-point statistics in order of first appearance of x, methods in the given order.
std::vector<PointAggregate> aggregate(const std::vector<ReplicationRow>& rows, const std::vector<Method>& methods);

/// Writes sweep_<var>.csv, replications_<var>.csv and summary_<var>.json.
void emit_results(const ExperimentResult& result, const ExperimentSpec& spec, const std::filesystem::path& dir);

/// Rows and aggregates read back from a JSON summary.
ExperimentResult read_summary(const std::filesystem::path& path);

/// Creates `dir` if needed and proves it is writable. Throws IoError.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace socassoc

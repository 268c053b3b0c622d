#pragma once

#include <cstdint>
#include <vector>

#include "socassoc/matching.hpp"

namespace socassoc {

enum class ScheduleMode {
  /// Sigmoid sharpness rises linearly from start to end (annealing toward greedy).
  InverseTemperature,
  /// Sharpness is a temperature falling linearly from start to zero.
  LiteralTemperature,
};

struct SwapEngineConfig {
  int max_iterations = 2000;
  double schedule_start = 1.0;
  double schedule_end = 50.0;
  ScheduleMode schedule = ScheduleMode::InverseTemperature;
  std::uint64_t seed = 1;
  /// Stop after this many consecutive iterations without an accepted move (0 disables).
  int early_stop_window = 200;
  double pair_swap_fraction = 0.5;
  /// Floor of |W| when normalizing welfare deltas.
  double welfare_floor = 1e-9;
  /// Recompute the welfare from scratch after every accepted move and record the drift.
  bool verify_incremental = false;

  void validate() const;
};

/// Swap-acceptance probability 1 / (1 + exp(-sharpness * delta)).
double acceptance_probability(double sharpness, double normalized_delta);

/// Sharpness of the acceptance sigmoid at `iteration` (1-based).
double schedule_value(const SwapEngineConfig& config, int iteration);

enum class TraceMove { None, PairSwap, Relocate };
const char* trace_move_name(TraceMove kind);

struct TraceRow {
  int iteration = 0;
  double welfare = 0.0;
  double best_welfare = 0.0;
  bool accepted = false;
  TraceMove move = TraceMove::None;
};

struct AnnealResult {
  Matching best;
  UtilityReport report;
  std::vector<TraceRow> trace;
  double initial_welfare = 0.0;
  int iterations = 0;       ///< iterations executed
  int best_iteration = 0;   ///< iteration at which the returned matching was found (0: initial)
  int accepted = 0;
  /// Largest relative gap between tracked and recomputed welfare (verify_incremental only).
  double max_incremental_error = 0.0;
};

/// Markov-chain swap search over the game's matchings starting from the
/// max-RSSI association. Keeps the best matching ever evaluated.
AnnealResult anneal_match(const Game& game, const SwapEngineConfig& config);
AnnealResult anneal_match(const Game& game, const Matching& start, const SwapEngineConfig& config);

}  // namespace socassoc

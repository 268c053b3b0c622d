#include "socassoc/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "socassoc/errors.hpp"

namespace socassoc {

void SwapEngineConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (!(schedule_start >= 0.0 && schedule_end >= 0.0)) throw ConfigError("schedule endpoints must be non-negative");
  if (early_stop_window < 0) throw ConfigError("early stop window must be non-negative");
  if (!(pair_swap_fraction >= 0.0 && pair_swap_fraction <= 1.0)) {
    throw ConfigError("pair swap fraction must lie in [0,1]");
  }
  if (!(welfare_floor > 0.0)) throw ConfigError("welfare floor must be positive");
}

double acceptance_probability(double sharpness, double normalized_delta) {
  const double z = sharpness * normalized_delta;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double schedule_value(const SwapEngineConfig& config, int iteration) {
  const double span = config.max_iterations > 1 ? static_cast<double>(config.max_iterations - 1) : 1.0;
  const double progress = std::clamp(static_cast<double>(iteration - 1) / span, 0.0, 1.0);
  if (config.schedule == ScheduleMode::LiteralTemperature) return config.schedule_start * (1.0 - progress);
  return config.schedule_start + (config.schedule_end - config.schedule_start) * progress;
}

const char* trace_move_name(TraceMove kind) {
  switch (kind) {
    case TraceMove::PairSwap: return "swap";
    case TraceMove::Relocate: return "relocate";
    case TraceMove::None: break;
  }
  return "none";
}

namespace {

template <class T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

}  // namespace

AnnealResult anneal_match(const Game& game, const SwapEngineConfig& config) {
  return anneal_match(game, initial_matching(game), config);
}

AnnealResult anneal_match(const Game& game, const Matching& start, const SwapEngineConfig& config) {
  config.validate();
  WelfareTracker tracker(game, start);
  AnnealResult out;
  out.best = tracker.matching();
  out.initial_welfare = tracker.welfare();
  double best_welfare = tracker.welfare();

  // Users that can be moved at all: an idle servable user, or one with an alternative.
  std::vector<int> mobile;
  for (int ue = 0; ue < game.ue_count(); ++ue) {
    const auto& cands = game.candidates[static_cast<std::size_t>(ue)];
    if (cands.size() >= 2 || (!cands.empty() && !start.serving(ue))) mobile.push_back(ue);
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int since_accept = 0;

  for (int it = 1; it <= config.max_iterations && !mobile.empty(); ++it) {
    const Matching& current = tracker.matching();
    const int ue = pick(mobile, rng);
    const auto here = current.serving(ue);
    const auto& cands = game.candidates[static_cast<std::size_t>(ue)];

    std::optional<Move> move;
    if (here && unit(rng) < config.pair_swap_fraction) {
      std::vector<int> partners;
      for (int other = 0; other < game.ue_count(); ++other) {
        if (other == ue) continue;
        const auto there = current.serving(other);
        if (!there || *there == *here) continue;
        if (game.is_candidate(ue, *there) && game.is_candidate(other, *here)) partners.push_back(other);
      }
      if (!partners.empty()) move = Move::swap(ue, pick(partners, rng));
    }
    if (!move) {
      std::vector<ServingNode> targets;
      for (const auto& sn : cands) {
        if (here && sn == *here) continue;
        if (static_cast<int>(tracker.served(sn).size()) >= game.quota(sn)) continue;
        targets.push_back(sn);
      }
      if (!targets.empty()) move = Move::relocate(ue, pick(targets, rng));
    }

    TraceRow row;
    row.iteration = it;
    if (move) {
      row.move = move->kind == MoveKind::PairSwap ? TraceMove::PairSwap : TraceMove::Relocate;
      const double before = tracker.welfare();
      const auto undo = tracker.apply(*move);
      const double after = tracker.welfare();
      if (after > best_welfare) {
        best_welfare = after;
        out.best = tracker.matching();
        out.best_iteration = it;
      }
      const double delta = (after - before) / std::max(std::abs(before), config.welfare_floor);
      if (unit(rng) < acceptance_probability(schedule_value(config, it), delta)) {
        row.accepted = true;
        ++out.accepted;
        if (config.verify_incremental) {
          const double fresh = evaluate(game, tracker.matching()).welfare;
          const double err = std::abs(fresh - after) / std::max(std::abs(fresh), config.welfare_floor);
          out.max_incremental_error = std::max(out.max_incremental_error, err);
        }
      } else {
        tracker.revert(undo);
      }
    }
    row.welfare = tracker.welfare();
    row.best_welfare = best_welfare;
    out.trace.push_back(row);
    out.iterations = it;

    since_accept = row.accepted ? 0 : since_accept + 1;
    if (config.early_stop_window > 0 && since_accept >= config.early_stop_window) break;
  }

  out.report = evaluate(game, out.best);
  return out;
}

}  // namespace socassoc

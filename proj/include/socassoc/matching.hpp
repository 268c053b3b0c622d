#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socassoc/radio.hpp"
#include "socassoc/social_graph.hpp"

namespace socassoc {

/// An association target: a small cell, or an important user acting as relay.
struct ServingNode {
  enum class Kind { Scbs, Relay };
  Kind kind = Kind::Scbs;
  int index = 0;  ///< SCBS index, or the relay's user index

  static ServingNode scbs(int i) { return {Kind::Scbs, i}; }
  static ServingNode relay(int ue) { return {Kind::Relay, ue}; }

  Transmitter transmitter() const { return {kind == Kind::Scbs ? TxKind::Scbs : TxKind::Ue, index}; }
  NodeRef node() const { return {kind == Kind::Scbs ? NodeKind::Scbs : NodeKind::Ue, index}; }
  bool operator==(const ServingNode&) const = default;
};

std::string serving_node_label(ServingNode sn);
const char* serving_node_kind_name(ServingNode::Kind kind);

/// Many-to-one assignment of users to serving nodes. Users may be unassigned
/// (unservable, or waiting for room at a relay).
class Matching {
 public:
  Matching() = default;
  Matching(int scbs_count, int ue_count) : scbs_count_(scbs_count), code_(static_cast<std::size_t>(ue_count), -1) {}

  int scbs_count() const { return scbs_count_; }
  int ue_count() const { return static_cast<int>(code_.size()); }

  std::optional<ServingNode> serving(int ue) const { return decode(code_[static_cast<std::size_t>(ue)]); }
  void assign(int ue, ServingNode sn) { code_[static_cast<std::size_t>(ue)] = encode(sn); }
  void unassign(int ue) { code_[static_cast<std::size_t>(ue)] = -1; }
  /// Users served by `sn`, ascending.
  std::vector<int> served_by(ServingNode sn) const;
  int assigned_count() const;

  /// Dense id: SCBS i -> i, relay p -> scbs_count + p; -1 when unassigned.
  int code(int ue) const { return code_[static_cast<std::size_t>(ue)]; }
  int encode(ServingNode sn) const { return sn.kind == ServingNode::Kind::Scbs ? sn.index : scbs_count_ + sn.index; }
  std::optional<ServingNode> decode(int code) const {
    if (code < 0) return std::nullopt;
    return code < scbs_count_ ? ServingNode::scbs(code) : ServingNode::relay(code - scbs_count_);
  }

  bool operator==(const Matching&) const = default;

 private:
  int scbs_count_ = 0;
  std::vector<int> code_;
};

/// Each user to the in-range SCBS with the strongest received power
/// (ties to the lower SCBS index); users out of every SCBS radius stay unassigned.
Matching max_rssi_baseline(const RadioScenario& scenario);

/// Closed-form utility pieces.
namespace utility {
/// Important user served by its SCBS: rate scaled by inverse social distance.
inline double relay_self(double rate_bps, double social_distance, double x_floor) {
  return rate_bps / (social_distance < x_floor ? x_floor : social_distance);
}
/// Two-hop user: half of the bottleneck hop.
inline double two_hop(double backhaul_bps, double access_bps) {
  return 0.5 * (backhaul_bps < access_bps ? backhaul_bps : access_bps);
}
}  // namespace utility

struct GameParams {
  double min_rate_bps = 0.0;
  int scbs_quota = 0;  ///< <= 0 means the subcarrier count
  int relay_quota = 3;
  double x_floor = 0.01;
  bool enable_d2d = true;
  double d2d_epsilon = 0.0;  ///< <= 0 means 1 / d2d radius
};

/// A fully specified association game: radio layout, social metrics, the
/// important users elected from the max-RSSI association and every user's
/// candidate serving nodes.
struct Game {
  RadioScenario scenario;
  SocialAnalysis social;
  GameParams params;
  ImportanceRanking importance;
  std::vector<int> relays;  ///< elected important users, ascending
  std::vector<std::vector<ServingNode>> candidates;
  std::vector<std::uint8_t> relay_flag;

  int scbs_count() const { return scenario.scbs_count(); }
  int ue_count() const { return scenario.ue_count(); }
  bool is_relay(int ue) const { return relay_flag[static_cast<std::size_t>(ue)] != 0; }
  bool is_candidate(int ue, ServingNode sn) const;
  int quota(ServingNode sn) const;
  double epsilon() const;
  bool servable(int ue) const { return !candidates[static_cast<std::size_t>(ue)].empty(); }
  int unservable_count() const;
};

/// Candidate serving nodes of one user under the load of `current`: in-range
/// SCBSs by descending estimated utility, then in-range relays by ascending
/// composite peer weight. Candidates whose estimated rate falls below the
/// minimum rate are dropped.
std::vector<ServingNode> candidate_sns(int ue, const RadioScenario& scenario, const SocialAnalysis& social,
                                       const std::vector<int>& relays, const Matching& current,
                                       const GameParams& params);

/// Elects one important user per cell of the max-RSSI association and
/// derives the candidate sets.
Game build_game(RadioScenario scenario, SocialAnalysis social, const GameParams& params);

/// The starting point of the swap search: the max-RSSI association.
Matching initial_matching(const Game& game);

struct UtilityReport {
  std::vector<double> ue_rate;     ///< end-to-end rate per user (bits/s)
  std::vector<double> ue_utility;  ///< U_{k,m}
  std::vector<double> sn_utility;  ///< by Matching code: SCBSs then one slot per user
  double welfare = 0.0;            ///< sum of SN utilities plus sum of user utilities

  double mean_rate() const;
  double sn(const Matching& m, ServingNode k) const { return sn_utility[static_cast<std::size_t>(m.encode(k))]; }
};

/// Full recomputation of every link, utility and the welfare.
UtilityReport evaluate(const Game& game, const Matching& matching);
double ue_utility(const Game& game, const Matching& matching, int ue);
double sn_utility(const Game& game, const Matching& matching, ServingNode sn);
double social_welfare(const Game& game, const Matching& matching);

/// Strict preference of `ue` for its node in `eta` over its node in `eta_prime`.
bool ue_prefers(const Game& game, int ue, const Matching& eta, const Matching& eta_prime);
/// Strict preference of `sn` for its served set in `eta` over that in `eta_prime`.
bool sn_prefers(const Game& game, ServingNode sn, const Matching& eta, const Matching& eta_prime);

enum class MoveKind { PairSwap, Relocate };
const char* move_kind_name(MoveKind kind);

/// Exchange the serving nodes of `ue` and `other`, or move `ue` into a vacancy at `target`.
struct Move {
  MoveKind kind = MoveKind::Relocate;
  int ue = 0;
  int other = -1;
  ServingNode target;

  static Move swap(int a, int b) { return {MoveKind::PairSwap, a, b, {}}; }
  static Move relocate(int ue, ServingNode to) { return {MoveKind::Relocate, ue, -1, to}; }
  bool operator==(const Move&) const = default;
};

enum class MoveIssue {
  None,
  Unassigned,     ///< a swapped user has no serving node
  SameNode,       ///< nothing would change
  NotCandidate,   ///< out of range, relay-to-relay or below the minimum rate
  QuotaExceeded,
};
const char* move_issue_name(MoveIssue issue);

MoveIssue check_move(const Game& game, const Matching& matching, const Move& move);
Matching apply_move(const Matching& matching, const Move& move);

/// Incrementally maintained network state: served sets, subcarriers,
/// co-channel transmitters, per-user rates and utilities, and the welfare.
/// A move only recomputes users whose load, subcarrier, co-channel
/// transmitter set or relay backhaul changed.
class WelfareTracker {
 public:
  WelfareTracker(const Game& game, Matching initial);

  struct Undo {
    std::vector<std::pair<int, int>> codes;  ///< (user, previous code)
    std::vector<int> dirty;
    std::vector<double> rates;
    std::vector<double> utilities;
    double welfare = 0.0;
  };

  const Matching& matching() const { return matching_; }
  double welfare() const { return welfare_; }
  double ue_utility(int ue) const { return utility_[static_cast<std::size_t>(ue)]; }
  /// Rate of the user's own hop (the access link for relayed users).
  double hop_rate_bps(int ue) const { return rate_[static_cast<std::size_t>(ue)]; }
  double sn_utility(ServingNode sn) const;
  const std::vector<int>& served(ServingNode sn) const { return served_[static_cast<std::size_t>(matching_.encode(sn))]; }

  /// Applies a feasible move; the returned record restores the previous state.
  Undo apply(const Move& move);
  void revert(const Undo& undo);

 private:
  void reassign(const std::vector<std::pair<int, int>>& changes, std::vector<int>& affected_codes,
                std::vector<int>& changed_subcarriers);
  void place(int code);
  void refresh_active(int subcarrier);
  double hop_rate(int ue) const;
  double utility_of(int ue) const;

  const Game* game_;
  Matching matching_;
  std::vector<std::vector<int>> served_;       ///< by code, ascending user index
  std::vector<int> subcarrier_;                ///< by user, -1 if unassigned
  std::vector<std::vector<int>> occupancy_;    ///< [subcarrier][code] -> served users on it
  std::vector<std::vector<Transmitter>> active_;
  std::vector<double> rate_;
  std::vector<double> utility_;
  double welfare_ = 0.0;
};

/// Whether the move is a welfare-improving swap in the two-sided sense:
/// none of the involved users and serving nodes loses utility and at
/// least one gains.
struct SwapCheck {
  bool approved = false;
  MoveIssue issue = MoveIssue::None;
};
SwapCheck is_stable_swap(const Game& game, const Matching& matching, const Move& move);

/// All feasible swaps and relocations, in a fixed order.
std::vector<Move> enumerate_moves(const Game& game, const Matching& matching);

/// Every approved swap against `matching`; empty iff the matching is two-sided stable.
std::vector<Move> audit_stability(const Game& game, const Matching& matching);

struct StabilizeResult {
  Matching matching;
  int swaps = 0;
  bool converged = true;
  std::vector<double> welfare_path;  ///< welfare before the first and after every swap
};

/// Applies approved swaps one at a time until none remains (or max_swaps).
StabilizeResult greedy_stabilize(const Game& game, Matching start, int max_swaps = 100000);

}  // namespace socassoc

#include "socassoc/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "socassoc/errors.hpp"

namespace socassoc {

std::string serving_node_label(ServingNode sn) { return node_label(sn.node()); }

const char* serving_node_kind_name(ServingNode::Kind kind) {
  return kind == ServingNode::Kind::Scbs ? "scbs" : "relay";
}

const char* move_kind_name(MoveKind kind) { return kind == MoveKind::PairSwap ? "swap" : "relocate"; }

const char* move_issue_name(MoveIssue issue) {
  switch (issue) {
    case MoveIssue::None: return "none";
    case MoveIssue::Unassigned: return "unassigned";
    case MoveIssue::SameNode: return "same_node";
    case MoveIssue::NotCandidate: return "not_candidate";
    case MoveIssue::QuotaExceeded: return "quota_exceeded";
  }
  return "unknown";
}

std::vector<int> Matching::served_by(ServingNode sn) const {
  const int c = encode(sn);
  std::vector<int> out;
  for (int ue = 0; ue < ue_count(); ++ue) {
    if (code_[static_cast<std::size_t>(ue)] == c) out.push_back(ue);
  }
  return out;
}

int Matching::assigned_count() const {
  return static_cast<int>(std::count_if(code_.begin(), code_.end(), [](int c) { return c >= 0; }));
}

Matching max_rssi_baseline(const RadioScenario& scenario) {
  Matching out(scenario.scbs_count(), scenario.ue_count());
  for (int ue = 0; ue < scenario.ue_count(); ++ue) {
    int best = -1;
    double best_power = 0.0;
    for (int i = 0; i < scenario.scbs_count(); ++i) {
      const Transmitter tx{TxKind::Scbs, i};
      if (!scenario.in_range(tx, ue)) continue;
      const double power = scenario.received_power_mw(tx, ue);
      if (best < 0 || power > best_power) {
        best = i;
        best_power = power;
      }
    }
    if (best >= 0) out.assign(ue, ServingNode::scbs(best));
  }
  return out;
}

bool Game::is_candidate(int ue, ServingNode sn) const {
  const auto& c = candidates[static_cast<std::size_t>(ue)];
  return std::find(c.begin(), c.end(), sn) != c.end();
}

int Game::quota(ServingNode sn) const {
  if (sn.kind == ServingNode::Kind::Relay) return params.relay_quota;
  return params.scbs_quota > 0 ? params.scbs_quota : scenario.params.subcarriers;
}

double Game::epsilon() const {
  return params.d2d_epsilon > 0.0 ? params.d2d_epsilon : 1.0 / scenario.params.d2d_radius_m;
}

int Game::unservable_count() const {
  int n = 0;
  for (int ue = 0; ue < ue_count(); ++ue) n += servable(ue) ? 0 : 1;
  return n;
}

namespace {

std::vector<int> load_by_code(const Matching& m) {
  std::vector<int> load(static_cast<std::size_t>(m.scbs_count() + m.ue_count()), 0);
  for (int ue = 0; ue < m.ue_count(); ++ue) {
    if (m.code(ue) >= 0) ++load[static_cast<std::size_t>(m.code(ue))];
  }
  return load;
}

// Rate `ue` would get from an SCBS if it joined (or stayed), assuming every
// other loaded SCBS transmits on the same subcarrier.
double estimate_scbs_rate(int ue, int scbs, const RadioScenario& scenario, const Matching& current,
                          const std::vector<int>& load) {
  std::vector<Transmitter> interferers;
  for (int j = 0; j < scenario.scbs_count(); ++j) {
    if (j != scbs && load[static_cast<std::size_t>(j)] > 0) interferers.push_back({TxKind::Scbs, j});
  }
  const int members = load[static_cast<std::size_t>(scbs)] + (current.code(ue) == scbs ? 0 : 1);
  return link_rate({TxKind::Scbs, scbs}, ue, 0, scenario, interferers, 1.0 / members).rate_bps;
}

}  // namespace

std::vector<ServingNode> candidate_sns(int ue, const RadioScenario& scenario, const SocialAnalysis& social,
                                       const std::vector<int>& relays, const Matching& current,
                                       const GameParams& params) {
  const bool self_is_relay = std::find(relays.begin(), relays.end(), ue) != relays.end();
  const auto load = load_by_code(current);
  const double x_floor = params.x_floor;

  struct Ranked {
    double key;
    int index;
  };
  std::vector<Ranked> cells;
  for (int i = 0; i < scenario.scbs_count(); ++i) {
    if (!scenario.in_range({TxKind::Scbs, i}, ue)) continue;
    const double rate = estimate_scbs_rate(ue, i, scenario, current, load);
    if (rate < params.min_rate_bps) continue;
    const double value =
        self_is_relay
            ? utility::relay_self(rate, social.distance_between({NodeKind::Scbs, i}, {NodeKind::Ue, ue}), x_floor)
            : rate;
    cells.push_back({value, i});
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Ranked& a, const Ranked& b) { return a.key > b.key; });

  std::vector<Ranked> peers;
  if (params.enable_d2d && !self_is_relay) {
    const double eps = params.d2d_epsilon > 0.0 ? params.d2d_epsilon : 1.0 / scenario.params.d2d_radius_m;
    for (int p : relays) {
      if (p == ue || !scenario.in_range({TxKind::Ue, p}, ue)) continue;
      const auto home = current.serving(p);
      if (!home || home->kind != ServingNode::Kind::Scbs) continue;
      const std::size_t relay_code = static_cast<std::size_t>(current.encode(ServingNode::relay(p)));
      const int members = load[relay_code] + (current.code(ue) == static_cast<int>(relay_code) ? 0 : 1);
      const double access = link_rate({TxKind::Ue, p}, ue, 0, scenario, {}, 1.0 / members).rate_bps;
      const double backhaul = estimate_scbs_rate(p, home->index, scenario, current, load);
      if (utility::two_hop(backhaul, access) < params.min_rate_bps) continue;
      const double d = scenario.distance_to_ue({TxKind::Ue, p}, ue);
      const double w = d2d_peer_weight(d, social.distance_between({NodeKind::Ue, p}, {NodeKind::Ue, ue}), eps);
      peers.push_back({w, p});
    }
    std::stable_sort(peers.begin(), peers.end(), [](const Ranked& a, const Ranked& b) { return a.key < b.key; });
  }

  std::vector<ServingNode> out;
  for (const auto& c : cells) out.push_back(ServingNode::scbs(c.index));
  for (const auto& p : peers) out.push_back(ServingNode::relay(p.index));
  return out;
}

Game build_game(RadioScenario scenario, SocialAnalysis social, const GameParams& params) {
  if (params.relay_quota < 0) throw ConfigError("relay quota must be non-negative");
  if (!(params.x_floor > 0.0)) throw ConfigError("social distance floor must be positive");
  Game game{std::move(scenario), std::move(social), params, {}, {}, {}, {}};
  const Matching baseline = max_rssi_baseline(game.scenario);

  std::vector<std::vector<int>> cells(static_cast<std::size_t>(game.scbs_count()));
  for (int i = 0; i < game.scbs_count(); ++i) cells[static_cast<std::size_t>(i)] = baseline.served_by(ServingNode::scbs(i));
  std::vector<double> scores = game.social.scores;
  scores.resize(static_cast<std::size_t>(game.ue_count()), 0.0);
  game.importance = elect_important_ues(std::move(scores), cells);

  game.relay_flag.assign(static_cast<std::size_t>(game.ue_count()), 0);
  for (const auto& elected : game.importance.elected) {
    if (elected) {
      game.relays.push_back(*elected);
      game.relay_flag[static_cast<std::size_t>(*elected)] = 1;
    }
  }
  std::sort(game.relays.begin(), game.relays.end());

  game.candidates.resize(static_cast<std::size_t>(game.ue_count()));
  for (int ue = 0; ue < game.ue_count(); ++ue) {
    game.candidates[static_cast<std::size_t>(ue)] =
        candidate_sns(ue, game.scenario, game.social, game.relays, baseline, params);
  }
  return game;
}

Matching initial_matching(const Game& game) {
  Matching m = max_rssi_baseline(game.scenario);
  // The minimum-rate filter can remove a user's max-RSSI cell from its candidates.
  for (int ue = 0; ue < m.ue_count(); ++ue) {
    auto sn = m.serving(ue);
    if (sn && !game.is_candidate(ue, *sn)) m.unassign(ue);
  }
  return m;
}

// ---------------------------------------------------------------------------
// WelfareTracker

WelfareTracker::WelfareTracker(const Game& game, Matching initial)
    : game_(&game),
      matching_(std::move(initial)),
      served_(static_cast<std::size_t>(game.scbs_count() + game.ue_count())),
      subcarrier_(static_cast<std::size_t>(game.ue_count()), -1),
      occupancy_(static_cast<std::size_t>(game.scenario.params.subcarriers),
                 std::vector<int>(static_cast<std::size_t>(game.scbs_count() + game.ue_count()), 0)),
      active_(static_cast<std::size_t>(game.scenario.params.subcarriers)),
      rate_(static_cast<std::size_t>(game.ue_count()), 0.0),
      utility_(static_cast<std::size_t>(game.ue_count()), 0.0) {
  if (matching_.ue_count() != game.ue_count() || matching_.scbs_count() != game.scbs_count()) {
    throw InputError("matching dimensions do not match the game");
  }
  for (int ue = 0; ue < game.ue_count(); ++ue) {
    if (matching_.code(ue) >= 0) served_[static_cast<std::size_t>(matching_.code(ue))].push_back(ue);
  }
  for (int code = 0; code < static_cast<int>(served_.size()); ++code) place(code);
  for (int c = 0; c < game.scenario.params.subcarriers; ++c) refresh_active(c);
  for (int ue = 0; ue < game.ue_count(); ++ue) rate_[static_cast<std::size_t>(ue)] = hop_rate(ue);
  for (int ue = 0; ue < game.ue_count(); ++ue) utility_[static_cast<std::size_t>(ue)] = utility_of(ue);

  double sn_total = 0.0;
  for (const auto& members : served_) {
    double u = 0.0;
    for (int ue : members) u += utility_[static_cast<std::size_t>(ue)];
    sn_total += u;
  }
  welfare_ = sn_total + std::accumulate(utility_.begin(), utility_.end(), 0.0);
}

double WelfareTracker::sn_utility(ServingNode sn) const {
  double u = 0.0;
  for (int ue : served(sn)) u += utility_[static_cast<std::size_t>(ue)];
  return u;
}

void WelfareTracker::place(int code) {
  const auto sn = matching_.decode(code);
  const int subcarriers = game_->scenario.params.subcarriers;
  const int offset = sn->kind == ServingNode::Kind::Scbs
                         ? game_->scenario.scbs_subcarrier_offset[static_cast<std::size_t>(sn->index)]
                         : game_->scenario.ue_subcarrier_offset[static_cast<std::size_t>(sn->index)];
  const auto& members = served_[static_cast<std::size_t>(code)];
  for (std::size_t rank = 0; rank < members.size(); ++rank) {
    const int c = static_cast<int>((static_cast<std::size_t>(offset) + rank) % static_cast<std::size_t>(subcarriers));
    subcarrier_[static_cast<std::size_t>(members[rank])] = c;
    ++occupancy_[static_cast<std::size_t>(c)][static_cast<std::size_t>(code)];
  }
}

void WelfareTracker::refresh_active(int subcarrier) {
  auto& list = active_[static_cast<std::size_t>(subcarrier)];
  list.clear();
  const auto& occ = occupancy_[static_cast<std::size_t>(subcarrier)];
  for (int code = 0; code < static_cast<int>(occ.size()); ++code) {
    if (occ[static_cast<std::size_t>(code)] > 0) list.push_back(matching_.decode(code)->transmitter());
  }
}

double WelfareTracker::hop_rate(int ue) const {
  const int code = matching_.code(ue);
  if (code < 0) return 0.0;
  const auto sn = matching_.decode(code);
  const double share = 1.0 / static_cast<double>(served_[static_cast<std::size_t>(code)].size());
  const int c = subcarrier_[static_cast<std::size_t>(ue)];
  return link_rate(sn->transmitter(), ue, c, game_->scenario, active_[static_cast<std::size_t>(c)], share).rate_bps;
}

double WelfareTracker::utility_of(int ue) const {
  const auto sn = matching_.serving(ue);
  if (!sn) return 0.0;
  const double rate = rate_[static_cast<std::size_t>(ue)];
  if (sn->kind == ServingNode::Kind::Relay) {
    return utility::two_hop(rate_[static_cast<std::size_t>(sn->index)], rate);
  }
  if (game_->is_relay(ue)) {
    const double x = game_->social.distance_between(sn->node(), {NodeKind::Ue, ue});
    return utility::relay_self(rate, x, game_->params.x_floor);
  }
  return rate;
}

void WelfareTracker::reassign(const std::vector<std::pair<int, int>>& changes, std::vector<int>& affected,
                              std::vector<int>& changed_subcarriers) {
  affected.clear();
  for (auto [ue, code] : changes) {
    const int old = matching_.code(ue);
    if (old >= 0) affected.push_back(old);
    if (code >= 0) affected.push_back(code);
  }
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

  const int subcarriers = game_->scenario.params.subcarriers;
  std::vector<std::uint8_t> before(static_cast<std::size_t>(subcarriers) * affected.size());
  for (std::size_t a = 0; a < affected.size(); ++a) {
    const auto code = static_cast<std::size_t>(affected[a]);
    for (int c = 0; c < subcarriers; ++c) {
      auto& occ = occupancy_[static_cast<std::size_t>(c)][code];
      before[a * static_cast<std::size_t>(subcarriers) + static_cast<std::size_t>(c)] = occ > 0;
      occ = 0;
    }
  }

  for (auto [ue, code] : changes) {
    const int old = matching_.code(ue);
    if (old >= 0) {
      auto& list = served_[static_cast<std::size_t>(old)];
      list.erase(std::find(list.begin(), list.end(), ue));
    }
    if (code >= 0) {
      auto& list = served_[static_cast<std::size_t>(code)];
      list.insert(std::lower_bound(list.begin(), list.end(), ue), ue);
      matching_.assign(ue, *matching_.decode(code));
    } else {
      matching_.unassign(ue);
      subcarrier_[static_cast<std::size_t>(ue)] = -1;
    }
  }
  for (int code : affected) place(code);

  changed_subcarriers.clear();
  for (int c = 0; c < subcarriers; ++c) {
    for (std::size_t a = 0; a < affected.size(); ++a) {
      const bool now = occupancy_[static_cast<std::size_t>(c)][static_cast<std::size_t>(affected[a])] > 0;
      if (now != static_cast<bool>(before[a * static_cast<std::size_t>(subcarriers) + static_cast<std::size_t>(c)])) {
        changed_subcarriers.push_back(c);
        break;
      }
    }
  }
  for (int c : changed_subcarriers) refresh_active(c);
}

WelfareTracker::Undo WelfareTracker::apply(const Move& move) {
  std::vector<std::pair<int, int>> changes;
  if (move.kind == MoveKind::PairSwap) {
    changes = {{move.ue, matching_.code(move.other)}, {move.other, matching_.code(move.ue)}};
  } else {
    changes = {{move.ue, matching_.encode(move.target)}};
  }
  Undo undo;
  for (auto [ue, code] : changes) {
    (void)code;
    undo.codes.emplace_back(ue, matching_.code(ue));
  }
  undo.welfare = welfare_;

  std::vector<int> affected, changed;
  reassign(changes, affected, changed);

  const int users = game_->ue_count();
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(users), 0);
  auto add = [&](int ue) {
    if (!mark[static_cast<std::size_t>(ue)]) {
      mark[static_cast<std::size_t>(ue)] = 1;
      undo.dirty.push_back(ue);
    }
  };
  for (auto [ue, code] : changes) {
    (void)code;
    add(ue);
  }
  for (int code : affected) {
    for (int ue : served_[static_cast<std::size_t>(code)]) add(ue);
  }
  if (!changed.empty()) {
    for (int ue = 0; ue < users; ++ue) {
      const int c = subcarrier_[static_cast<std::size_t>(ue)];
      if (c >= 0 && std::find(changed.begin(), changed.end(), c) != changed.end()) add(ue);
    }
  }
  // A relay's backhaul feeds the utility of everyone it serves.
  for (std::size_t i = 0; i < undo.dirty.size(); ++i) {
    const int ue = undo.dirty[i];
    if (game_->is_relay(ue)) {
      for (int client : served_[static_cast<std::size_t>(matching_.encode(ServingNode::relay(ue)))]) add(client);
    }
  }

  double old_sum = 0.0;
  for (int ue : undo.dirty) {
    undo.rates.push_back(rate_[static_cast<std::size_t>(ue)]);
    undo.utilities.push_back(utility_[static_cast<std::size_t>(ue)]);
    old_sum += utility_[static_cast<std::size_t>(ue)];
  }
  for (int ue : undo.dirty) rate_[static_cast<std::size_t>(ue)] = hop_rate(ue);
  double new_sum = 0.0;
  for (int ue : undo.dirty) {
    utility_[static_cast<std::size_t>(ue)] = utility_of(ue);
    new_sum += utility_[static_cast<std::size_t>(ue)];
  }
  // Every user utility appears once on its own and once inside its serving node's utility.
  welfare_ += 2.0 * (new_sum - old_sum);
  return undo;
}

void WelfareTracker::revert(const Undo& undo) {
  std::vector<int> affected, changed;
  reassign(undo.codes, affected, changed);
  for (std::size_t i = 0; i < undo.dirty.size(); ++i) {
    rate_[static_cast<std::size_t>(undo.dirty[i])] = undo.rates[i];
    utility_[static_cast<std::size_t>(undo.dirty[i])] = undo.utilities[i];
  }
  welfare_ = undo.welfare;
}

// ---------------------------------------------------------------------------
// Evaluation

double UtilityReport::mean_rate() const {
  if (ue_rate.empty()) return 0.0;
  return std::accumulate(ue_rate.begin(), ue_rate.end(), 0.0) / static_cast<double>(ue_rate.size());
}

UtilityReport evaluate(const Game& game, const Matching& matching) {
  const WelfareTracker state(game, matching);
  UtilityReport out;
  const int users = game.ue_count();
  out.ue_rate.resize(static_cast<std::size_t>(users));
  out.ue_utility.resize(static_cast<std::size_t>(users));
  out.sn_utility.assign(static_cast<std::size_t>(game.scbs_count() + users), 0.0);
  for (int ue = 0; ue < users; ++ue) {
    const auto sn = matching.serving(ue);
    const double hop = state.hop_rate_bps(ue);
    out.ue_rate[static_cast<std::size_t>(ue)] =
        sn && sn->kind == ServingNode::Kind::Relay ? utility::two_hop(state.hop_rate_bps(sn->index), hop) : hop;
    out.ue_utility[static_cast<std::size_t>(ue)] = state.ue_utility(ue);
  }
  double sn_total = 0.0;
  for (int code = 0; code < game.scbs_count() + users; ++code) {
    double u = 0.0;
    for (int ue = 0; ue < users; ++ue) {
      if (matching.code(ue) == code) u += out.ue_utility[static_cast<std::size_t>(ue)];
    }
    out.sn_utility[static_cast<std::size_t>(code)] = u;
    sn_total += u;
  }
  out.welfare = sn_total + std::accumulate(out.ue_utility.begin(), out.ue_utility.end(), 0.0);
  return out;
}

double ue_utility(const Game& game, const Matching& matching, int ue) {
  return evaluate(game, matching).ue_utility[static_cast<std::size_t>(ue)];
}

double sn_utility(const Game& game, const Matching& matching, ServingNode sn) {
  return evaluate(game, matching).sn(matching, sn);
}

double social_welfare(const Game& game, const Matching& matching) { return evaluate(game, matching).welfare; }

bool ue_prefers(const Game& game, int ue, const Matching& eta, const Matching& eta_prime) {
  return ue_utility(game, eta, ue) > ue_utility(game, eta_prime, ue);
}

bool sn_prefers(const Game& game, ServingNode sn, const Matching& eta, const Matching& eta_prime) {
  return sn_utility(game, eta, sn) > sn_utility(game, eta_prime, sn);
}

// ---------------------------------------------------------------------------
// Moves

namespace {

template <class LoadFn>
MoveIssue check_move_with(const Game& game, const Matching& matching, const Move& move, LoadFn load) {
  if (move.kind == MoveKind::PairSwap) {
    const auto a = matching.serving(move.ue);
    const auto b = matching.serving(move.other);
    if (!a || !b) return MoveIssue::Unassigned;
    if (*a == *b) return MoveIssue::SameNode;
    if (!game.is_candidate(move.ue, *b) || !game.is_candidate(move.other, *a)) return MoveIssue::NotCandidate;
    return MoveIssue::None;
  }
  const auto current = matching.serving(move.ue);
  if (current && *current == move.target) return MoveIssue::SameNode;
  if (!game.is_candidate(move.ue, move.target)) return MoveIssue::NotCandidate;
  if (load(move.target) >= game.quota(move.target)) return MoveIssue::QuotaExceeded;
  return MoveIssue::None;
}

bool exceeds(double after, double before) {
  return after > before + 1e-12 * std::max(1.0, std::abs(before));
}

struct Players {
  std::vector<int> ues;
  std::vector<ServingNode> sns;
};

Players players_of(const Matching& matching, const Move& move) {
  Players p;
  p.ues.push_back(move.ue);
  if (auto j = matching.serving(move.ue)) p.sns.push_back(*j);
  if (move.kind == MoveKind::PairSwap) {
    p.ues.push_back(move.other);
    p.sns.push_back(*matching.serving(move.other));
  } else {
    p.sns.push_back(move.target);
  }
  return p;
}

bool approved(const std::vector<double>& before, const std::vector<double>& after) {
  bool gain = false;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (exceeds(before[i], after[i])) return false;
    if (exceeds(after[i], before[i])) gain = true;
  }
  return gain;
}

std::vector<double> tracked_values(const WelfareTracker& t, const Players& p) {
  std::vector<double> v;
  for (int ue : p.ues) v.push_back(t.ue_utility(ue));
  for (const auto& sn : p.sns) v.push_back(t.sn_utility(sn));
  return v;
}

// Applies the move on the tracker and keeps it only if it is an approved swap.
bool try_approved(WelfareTracker& tracker, const Move& move) {
  const Players p = players_of(tracker.matching(), move);
  const auto before = tracked_values(tracker, p);
  const auto undo = tracker.apply(move);
  if (approved(before, tracked_values(tracker, p))) return true;
  tracker.revert(undo);
  return false;
}

std::vector<Move> feasible_moves(const Game& game, const WelfareTracker& tracker) {
  const Matching& m = tracker.matching();
  auto load = [&](ServingNode sn) { return static_cast<int>(tracker.served(sn).size()); };
  std::vector<Move> out;
  for (int a = 0; a < game.ue_count(); ++a) {
    for (int b = a + 1; b < game.ue_count(); ++b) {
      const Move mv = Move::swap(a, b);
      if (check_move_with(game, m, mv, load) == MoveIssue::None) out.push_back(mv);
    }
  }
  for (int ue = 0; ue < game.ue_count(); ++ue) {
    for (const auto& sn : game.candidates[static_cast<std::size_t>(ue)]) {
      const Move mv = Move::relocate(ue, sn);
      if (check_move_with(game, m, mv, load) == MoveIssue::None) out.push_back(mv);
    }
  }
  return out;
}

}  // namespace

MoveIssue check_move(const Game& game, const Matching& matching, const Move& move) {
  return check_move_with(game, matching, move,
                         [&](ServingNode sn) { return static_cast<int>(matching.served_by(sn).size()); });
}

Matching apply_move(const Matching& matching, const Move& move) {
  Matching out = matching;
  if (move.kind == MoveKind::PairSwap) {
    const auto a = matching.serving(move.ue);
    const auto b = matching.serving(move.other);
    if (b) out.assign(move.ue, *b); else out.unassign(move.ue);
    if (a) out.assign(move.other, *a); else out.unassign(move.other);
  } else {
    out.assign(move.ue, move.target);
  }
  return out;
}

SwapCheck is_stable_swap(const Game& game, const Matching& matching, const Move& move) {
  const MoveIssue issue = check_move(game, matching, move);
  if (issue != MoveIssue::None) return {false, issue};
  const Players p = players_of(matching, move);
  const Matching after = apply_move(matching, move);
  const UtilityReport r0 = evaluate(game, matching);
  const UtilityReport r1 = evaluate(game, after);
  std::vector<double> before, now;
  for (int ue : p.ues) {
    before.push_back(r0.ue_utility[static_cast<std::size_t>(ue)]);
    now.push_back(r1.ue_utility[static_cast<std::size_t>(ue)]);
  }
  for (const auto& sn : p.sns) {
    before.push_back(r0.sn(matching, sn));
    now.push_back(r1.sn(after, sn));
  }
  return {approved(before, now), MoveIssue::None};
}

std::vector<Move> enumerate_moves(const Game& game, const Matching& matching) {
  const WelfareTracker tracker(game, matching);
  return feasible_moves(game, tracker);
}

std::vector<Move> audit_stability(const Game& game, const Matching& matching) {
  WelfareTracker tracker(game, matching);
  std::vector<Move> violations;
  for (const Move& mv : feasible_moves(game, tracker)) {
    const Players p = players_of(tracker.matching(), mv);
    const auto before = tracked_values(tracker, p);
    const auto undo = tracker.apply(mv);
    if (approved(before, tracked_values(tracker, p))) violations.push_back(mv);
    tracker.revert(undo);
  }
  return violations;
}

StabilizeResult greedy_stabilize(const Game& game, Matching start, int max_swaps) {
  WelfareTracker tracker(game, std::move(start));
  StabilizeResult out;
  out.welfare_path.push_back(tracker.welfare());
  while (true) {
    bool moved = false;
    for (const Move& mv : feasible_moves(game, tracker)) {
      if (try_approved(tracker, mv)) {
        moved = true;
        break;
      }
    }
    if (!moved) break;
    ++out.swaps;
    out.welfare_path.push_back(tracker.welfare());
    if (out.swaps >= max_swaps) {
      out.converged = audit_stability(game, tracker.matching()).empty();
      break;
    }
  }
  out.matching = tracker.matching();
  return out;
}

}  // namespace socassoc

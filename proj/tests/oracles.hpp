#pragma once

// Slow reference implementations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "socassoc/harness.hpp"
#include "socassoc/matching.hpp"
#include "socassoc/social_graph.hpp"

namespace oracle {

using namespace socassoc;

/// Edge betweenness by listing every shortest path of every unordered pair.
inline SquareMatrix brute_force_betweenness(const SocialGraph& g) {
  const std::size_t n = g.vertex_count();
  SquareMatrix out(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (g.adjacent(u, v) && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dist[t] < 0) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> path{s};
      std::function<void(std::size_t)> walk = [&](std::size_t u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (g.adjacent(u, v) && dist[v] == dist[u] + 1 && dist[v] <= dist[t]) {
            path.push_back(v);
            walk(v);
            path.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          out(p[i], p[i + 1]) += 1.0 / static_cast<double>(paths.size());
          out(p[i + 1], p[i]) += 1.0 / static_cast<double>(paths.size());
        }
      }
    }
  }
  return out;
}

struct Evaluation {
  std::vector<double> utility;
  std::vector<double> sn_utility;  ///< by matching code
  double welfare = 0.0;
};

inline double pathloss(const RadioParams& p, bool from_scbs, double d) {
  d = std::max(d, p.pathloss.min_distance_m);
  if (from_scbs && p.pathloss.scbs_model == ScbsPathlossModel::ThreeGppPico) {
    return p.pathloss.scbs_intercept_db + p.pathloss.scbs_slope_db * std::log10(d / 1000.0);
  }
  return 10.0 * p.pathloss.d2d_alpha * std::log10(d);
}

/// Utilities and welfare recomputed from positions, without the library's link or tracker code.
inline Evaluation recompute(const Game& game, const Matching& m) {
  const RadioScenario& sc = game.scenario;
  const RadioParams& p = sc.params;
  const int n = sc.scbs_count();
  const int users = sc.ue_count();
  const int codes = n + users;
  const int subcarriers = p.subcarriers;

  std::vector<std::vector<int>> served(static_cast<std::size_t>(codes));
  for (int ue = 0; ue < users; ++ue) {
    if (m.code(ue) >= 0) served[static_cast<std::size_t>(m.code(ue))].push_back(ue);
  }
  std::vector<int> carrier(static_cast<std::size_t>(users), -1);
  std::vector<std::set<int>> on_carrier(static_cast<std::size_t>(subcarriers));
  for (int code = 0; code < codes; ++code) {
    const int offset = code < n ? sc.scbs_subcarrier_offset[static_cast<std::size_t>(code)]
                                : sc.ue_subcarrier_offset[static_cast<std::size_t>(code - n)];
    const auto& list = served[static_cast<std::size_t>(code)];
    for (std::size_t r = 0; r < list.size(); ++r) {
      const int c = static_cast<int>((static_cast<std::size_t>(offset) + r) % static_cast<std::size_t>(subcarriers));
      carrier[static_cast<std::size_t>(list[r])] = c;
      on_carrier[static_cast<std::size_t>(c)].insert(code);
    }
  }
  auto pos = [&](int code) { return code < n ? sc.scbs[static_cast<std::size_t>(code)] : sc.ues[static_cast<std::size_t>(code - n)]; };
  auto power_mw = [&](int code) { return std::pow(10.0, (code < n ? p.scbs_power_dbm : p.ue_power_dbm) / 10.0); };
  auto rx_mw = [&](int code, int ue) {
    const Position a = pos(code), b = sc.ues[static_cast<std::size_t>(ue)];
    const double d = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
    return power_mw(code) * p.gain_factor * std::pow(10.0, -pathloss(p, code < n, d) / 10.0);
  };

  std::vector<double> hop(static_cast<std::size_t>(users), 0.0);
  for (int ue = 0; ue < users; ++ue) {
    const int code = m.code(ue);
    if (code < 0) continue;
    const int c = carrier[static_cast<std::size_t>(ue)];
    double interference = 0.0;
    for (int other : on_carrier[static_cast<std::size_t>(c)]) {
      if (other == code) continue;
      if (other >= n && (!p.d2d_interference || other - n == ue)) continue;
      interference += rx_mw(other, ue);
    }
    const double bw = p.system_bandwidth_hz / static_cast<double>(served[static_cast<std::size_t>(code)].size());
    const double noise = std::pow(10.0, p.noise_psd_dbm_hz / 10.0) * bw;
    hop[static_cast<std::size_t>(ue)] = bw * std::log2(1.0 + rx_mw(code, ue) / (noise + interference));
  }

  Evaluation out;
  out.utility.assign(static_cast<std::size_t>(users), 0.0);
  out.sn_utility.assign(static_cast<std::size_t>(codes), 0.0);
  for (int ue = 0; ue < users; ++ue) {
    const int code = m.code(ue);
    if (code < 0) continue;
    double u = hop[static_cast<std::size_t>(ue)];
    if (code >= n) {
      u = 0.5 * std::min(hop[static_cast<std::size_t>(code - n)], u);
    } else if (game.is_relay(ue)) {
      const double x = game.social.distance_between({NodeKind::Scbs, code}, {NodeKind::Ue, ue});
      u /= std::max(x, game.params.x_floor);
    }
    out.utility[static_cast<std::size_t>(ue)] = u;
  }
  for (int ue = 0; ue < users; ++ue) {
    if (m.code(ue) >= 0) out.sn_utility[static_cast<std::size_t>(m.code(ue))] += out.utility[static_cast<std::size_t>(ue)];
  }
  for (double u : out.utility) out.welfare += u;
  for (double u : out.sn_utility) out.welfare += u;
  return out;
}

/// Maximum welfare over every matching the swap search can reach: users the
/// start matching serves stay served by one of their candidates, idle users
/// may also stay idle; quotas hold.
inline double exhaustive_best_welfare(const Game& game, const Matching& start) {
  const int users = game.ue_count();
  Matching m(game.scbs_count(), users);
  std::vector<int> load(static_cast<std::size_t>(game.scbs_count() + users), 0);
  double best = -1.0;
  std::function<void(int)> go = [&](int ue) {
    if (ue == users) {
      best = std::max(best, socassoc::evaluate(game, m).welfare);
      return;
    }
    if (!start.serving(ue)) {
      m.unassign(ue);
      go(ue + 1);
    }
    for (const ServingNode& sn : game.candidates[static_cast<std::size_t>(ue)]) {
      const auto code = static_cast<std::size_t>(m.encode(sn));
      if (load[code] >= game.quota(sn)) continue;
      ++load[code];
      m.assign(ue, sn);
      go(ue + 1);
      --load[code];
      m.unassign(ue);
    }
  };
  go(0);
  return best;
}

inline bool not_less(double after, double before) { return after >= before - 1e-12 * std::max(1.0, std::abs(before)); }
inline bool more(double after, double before) { return after > before + 1e-12 * std::max(1.0, std::abs(before)); }

/// Every pair swap and vacancy move that the two-sided rule approves,
/// found by two nested loops over users and full recomputation.
inline std::vector<Move> double_loop_audit(const Game& game, const Matching& m) {
  const int users = game.ue_count();
  const Evaluation before = recompute(game, m);
  std::vector<int> load(static_cast<std::size_t>(game.scbs_count() + users), 0);
  for (int ue = 0; ue < users; ++ue) {
    if (m.code(ue) >= 0) ++load[static_cast<std::size_t>(m.code(ue))];
  }
  auto approve = [&](const Matching& after_m, const std::vector<int>& ues, const std::vector<int>& codes) {
    const Evaluation after = recompute(game, after_m);
    bool gain = false;
    for (int ue : ues) {
      const double b = before.utility[static_cast<std::size_t>(ue)], a = after.utility[static_cast<std::size_t>(ue)];
      if (!not_less(a, b)) return false;
      gain = gain || more(a, b);
    }
    for (int code : codes) {
      const double b = before.sn_utility[static_cast<std::size_t>(code)], a = after.sn_utility[static_cast<std::size_t>(code)];
      if (!not_less(a, b)) return false;
      gain = gain || more(a, b);
    }
    return gain;
  };

  std::vector<Move> out;
  for (int a = 0; a < users; ++a) {
    for (int b = a + 1; b < users; ++b) {
      const auto ja = m.serving(a), kb = m.serving(b);
      if (!ja || !kb || *ja == *kb) continue;
      if (!game.is_candidate(a, *kb) || !game.is_candidate(b, *ja)) continue;
      Matching after = m;
      after.assign(a, *kb);
      after.assign(b, *ja);
      if (approve(after, {a, b}, {m.encode(*ja), m.encode(*kb)})) out.push_back(Move::swap(a, b));
    }
  }
  for (int ue = 0; ue < users; ++ue) {
    for (const ServingNode& sn : game.candidates[static_cast<std::size_t>(ue)]) {
      const auto here = m.serving(ue);
      if (here && *here == sn) continue;
      if (load[static_cast<std::size_t>(m.encode(sn))] >= game.quota(sn)) continue;
      Matching after = m;
      after.assign(ue, sn);
      std::vector<int> codes{m.encode(sn)};
      if (here) codes.insert(codes.begin(), m.encode(*here));
      if (approve(after, {ue}, codes)) out.push_back(Move::relocate(ue, sn));
    }
  }
  return out;
}

/// A seeded drop on a small disk so that cells and relays overlap.
inline Game dense_instance(int n_scbs, int n_ues, std::uint64_t seed, double macro_radius_m = 60.0) {
  RunConfig config;
  config.radio.macro_radius_m = macro_radius_m;
  return make_game(config, n_scbs, n_ues, seed);
}

}  // namespace oracle

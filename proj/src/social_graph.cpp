#include "socassoc/social_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "socassoc/errors.hpp"

namespace socassoc {

std::string node_label(NodeRef node) {
  return (node.kind == NodeKind::Scbs ? "S" : "M") + std::to_string(node.index + 1);
}

NodeRef parse_node_label(const std::string& label) {
  if (label.size() < 2 || (label[0] != 'S' && label[0] != 'M')) {
    throw InputError("malformed node id '" + label + "'");
  }
  int number = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9') throw InputError("malformed node id '" + label + "'");
    number = number * 10 + (label[i] - '0');
  }
  if (number < 1) throw InputError("malformed node id '" + label + "'");
  return {label[0] == 'S' ? NodeKind::Scbs : NodeKind::Ue, number - 1};
}

SocialGraph::SocialGraph(std::vector<NodeRef> roster, const std::vector<Edge>& edges)
    : roster_(std::move(roster)),
      adjacency_(roster_.size() * roster_.size(), 0),
      neighbors_(roster_.size()) {
  const std::size_t n = roster_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (roster_[i] == roster_[j]) throw InputError("duplicate node " + node_label(roster_[i]) + " in roster");
    }
  }
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge references a vertex outside the roster");
    if (u == v) throw InputError("self loop on " + node_label(roster_[u]));
    adjacency_[u * n + v] = 1;
    adjacency_[v * n + u] = 1;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (adjacency_[u * n + v]) neighbors_[u].push_back(v);
    }
  }
}

std::size_t SocialGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : neighbors_) twice += nb.size();
  return twice / 2;
}

std::optional<std::size_t> SocialGraph::vertex_of(NodeRef node) const {
  auto it = std::find(roster_.begin(), roster_.end(), node);
  if (it == roster_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - roster_.begin());
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < roster_.size(); ++u) {
    for (std::size_t v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> SocialGraph::components() const {
  std::vector<int> label(roster_.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < roster_.size(); ++s) {
    if (label[s] >= 0) continue;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    label[s] = next;
    while (!frontier.empty()) {
      std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t w : neighbors_[u]) {
        if (label[w] < 0) {
          label[w] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

namespace {

std::size_t require_vertex(const std::vector<NodeRef>& roster, NodeRef node) {
  auto it = std::find(roster.begin(), roster.end(), node);
  if (it == roster.end()) throw InputError("edge references unknown node " + node_label(node));
  return static_cast<std::size_t>(it - roster.begin());
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
}

// Ring lattice over `members` with k/2 neighbours per side, each lattice edge
// rewired with probability `rewire` to a uniformly chosen non-neighbour.
void watts_strogatz(const std::vector<std::size_t>& members, int k, double rewire, std::mt19937_64& rng,
                    std::vector<Edge>& out) {
  const std::size_t n = members.size();
  if (n < 2 || k < 1) return;
  int half = std::min<int>(k / 2, static_cast<int>((n - 1) / 2));
  if (half < 1) half = 1;
  std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));
  for (int j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t t = (i + static_cast<std::size_t>(j)) % n;
      if (t != i) adj[i][t] = adj[t][i] = 1;
    }
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t t = (i + static_cast<std::size_t>(j)) % n;
      if (t == i || !adj[i][t]) continue;
      if (coin(rng) >= rewire) continue;
      std::vector<std::size_t> free;
      for (std::size_t w = 0; w < n; ++w) {
        if (w != i && !adj[i][w]) free.push_back(w);
      }
      if (free.empty()) continue;
      std::size_t w = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      adj[i][t] = adj[t][i] = 0;
      adj[i][w] = adj[w][i] = 1;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (adj[a][b]) out.emplace_back(members[a], members[b]);
    }
  }
}

}  // namespace

SocialGraph build_social_graph(std::vector<NodeRef> roster, const EdgeModel& model, std::uint64_t seed) {
  if (roster.empty()) throw InputError("social graph roster is empty");
  std::vector<Edge> edges;
  for (const auto& [a, b] : model.anchor_edges) {
    edges.emplace_back(require_vertex(roster, a), require_vertex(roster, b));
  }

  std::vector<std::size_t> users;
  for (std::size_t v = 0; v < roster.size(); ++v) {
    if (roster[v].kind == NodeKind::Ue) users.push_back(v);
  }

  std::mt19937_64 rng(seed);
  if (const auto* explicit_edges = std::get_if<ExplicitEdges>(&model.generator)) {
    for (const auto& [a, b] : explicit_edges->edges) {
      edges.emplace_back(require_vertex(roster, a), require_vertex(roster, b));
    }
  } else if (const auto* er = std::get_if<ErdosRenyi>(&model.generator)) {
    check_probability(er->p, "Erdos-Renyi edge probability");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t a = 0; a < users.size(); ++a) {
      for (std::size_t b = a + 1; b < users.size(); ++b) {
        if (coin(rng) < er->p) edges.emplace_back(users[a], users[b]);
      }
    }
  } else {
    const auto& ws = std::get<WattsStrogatz>(model.generator);
    check_probability(ws.rewire, "Watts-Strogatz rewiring probability");
    if (ws.k < 0) throw ConfigError("Watts-Strogatz degree must be non-negative");
    watts_strogatz(users, ws.k, ws.rewire, rng, edges);
  }
  return SocialGraph(std::move(roster), edges);
}

SquareMatrix raw_edge_betweenness(const SocialGraph& g) {
  const std::size_t n = g.vertex_count();
  SquareMatrix acc(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (std::size_t w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t w = *it;
      for (std::size_t v : preds[w]) {
        double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        acc(v, w) += c;
        acc(w, v) += c;
        delta[v] += c;
      }
    }
  }
  // Every unordered pair was counted once from each endpoint.
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) acc(u, v) *= 0.5;
  }
  return acc;
}

BetweennessMatrix edge_betweenness(const SocialGraph& g, BetweennessNorm norm) {
  const double v = static_cast<double>(g.vertex_count());
  double denominator = norm == BetweennessNorm::PairsExcludingEdge ? (v - 1.0) * (v - 2.0) : (v - 1.0) * (v - 1.0);
  if (denominator <= 0.0) denominator = 1.0;
  BetweennessMatrix out{raw_edge_betweenness(g), denominator};
  const std::size_t n = g.vertex_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out.values(a, b) /= denominator;
  }
  return out;
}

SimilarityMatrices similarity(const SocialGraph& g, SimilarityNorm norm) {
  const std::size_t n = g.vertex_count();
  SimilarityMatrices out{SquareMatrix(n), SquareMatrix(n), std::vector<double>(n, 0.0)};
  const auto component = g.components();
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m + 1; k < n; ++k) {
      if (component[m] != component[k]) continue;
      double q = 0.0;
      for (std::size_t z : g.neighbors(m)) {
        if (g.adjacent(z, k)) q += 1.0 / static_cast<double>(g.degree(z));
      }
      out.raw(m, k) = q;
      out.raw(k, m) = q;
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) out.column_max[col] = std::max(out.column_max[col], out.raw(row, col));
  }
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const double q = out.raw(row, col);
      if (norm == SimilarityNorm::RawClipped) {
        out.normalized(row, col) = std::min(q, 1.0);
      } else {
        out.normalized(row, col) = out.column_max[col] > 0.0 ? q / out.column_max[col] : 0.0;
      }
    }
  }
  return out;
}

SocialDistanceMatrix social_distance(const SquareMatrix& betweenness, const SquareMatrix& sim, double alpha,
                                     double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0) || std::abs(alpha + beta - 1.0) > 1e-9) {
    throw ConfigError("social distance weights must lie in [0,1] and sum to 1");
  }
  if (betweenness.order() != sim.order()) throw InputError("betweenness and similarity orders differ");
  const std::size_t n = sim.order();
  SocialDistanceMatrix out{SquareMatrix(n), alpha, beta};
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      if (m == k) continue;
      const double s_sym = 0.5 * (sim(m, k) + sim(k, m));
      out.values(m, k) = alpha * s_sym + beta * betweenness(m, k);
    }
  }
  return out;
}

SocialDistanceMatrix social_distance(const BetweennessMatrix& b, const SimilarityMatrices& s, double alpha,
                                     double beta) {
  return social_distance(b.values, s.normalized, alpha, beta);
}

std::vector<double> importance_scores(const SocialGraph& g, const SocialDistanceMatrix& x) {
  int users = 0;
  for (const auto& node : g.roster()) {
    if (node.kind == NodeKind::Ue) users = std::max(users, node.index + 1);
  }
  std::vector<double> scores(static_cast<std::size_t>(users), 0.0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const NodeRef& node = g.role(v);
    if (node.kind == NodeKind::Ue) scores[static_cast<std::size_t>(node.index)] = x.values.row_sum(v);
  }
  return scores;
}

ImportanceRanking elect_important_ues(std::vector<double> scores, const std::vector<std::vector<int>>& cells) {
  ImportanceRanking out{std::move(scores), {}};
  out.elected.reserve(cells.size());
  for (const auto& members : cells) {
    auto score_of = [&](int ue) {
      return ue >= 0 && static_cast<std::size_t>(ue) < out.scores.size() ? out.scores[static_cast<std::size_t>(ue)]
                                                                         : 0.0;
    };
    std::optional<int> best;
    for (int ue : members) {
      if (!best || score_of(ue) > score_of(*best) || (score_of(ue) == score_of(*best) && ue < *best)) best = ue;
    }
    out.elected.push_back(best);
  }
  return out;
}

double d2d_peer_weight(double distance_m, double social_distance, double epsilon) {
  return epsilon * distance_m * social_distance;
}

double SocialAnalysis::distance_between(NodeRef a, NodeRef b) const {
  auto va = graph.vertex_of(a);
  auto vb = graph.vertex_of(b);
  if (!va || !vb) return 0.0;
  return distance.values(*va, *vb);
}

SocialAnalysis analyze(SocialGraph graph, const SocialParams& params) {
  SocialAnalysis out;
  out.betweenness = edge_betweenness(graph, params.betweenness_norm);
  out.similarity = similarity(graph, params.similarity_norm);
  out.distance = social_distance(out.betweenness, out.similarity, params.alpha, params.beta);
  out.scores = importance_scores(graph, out.distance);
  out.graph = std::move(graph);
  return out;
}

}  // namespace socassoc

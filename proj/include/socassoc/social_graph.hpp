#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "socassoc/matrix.hpp"

namespace socassoc {

enum class NodeKind { Scbs, Ue };

/// A network node as seen by the social layer: a small cell or a user.
/// `index` is the zero-based position inside its own population.
struct NodeRef {
  NodeKind kind = NodeKind::Ue;
  int index = 0;

  bool operator==(const NodeRef&) const = default;
  auto operator<=>(const NodeRef&) const = default;
};

/// External label of a node: "S<k>" for small cells, "M<k>" for users (1-based).
std::string node_label(NodeRef node);
/// Inverse of node_label; throws InputError on malformed labels.
NodeRef parse_node_label(const std::string& label);

using Edge = std::pair<std::size_t, std::size_t>;
using NodeEdge = std::pair<NodeRef, NodeRef>;

/// Undirected simple graph whose vertices are network nodes.
class SocialGraph {
 public:
  SocialGraph() = default;
  /// Builds the graph over `roster`; edges are vertex-index pairs. Duplicate
  /// edges collapse, self loops and out-of-range endpoints throw InputError.
  SocialGraph(std::vector<NodeRef> roster, const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return roster_.size(); }
  std::size_t edge_count() const;
  const NodeRef& role(std::size_t v) const { return roster_[v]; }
  const std::vector<NodeRef>& roster() const { return roster_; }
  std::optional<std::size_t> vertex_of(NodeRef node) const;

  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u * roster_.size() + v] != 0; }
  std::span<const std::size_t> neighbors(std::size_t v) const { return neighbors_[v]; }
  std::size_t degree(std::size_t v) const { return neighbors_[v].size(); }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;
  /// Connected-component label per vertex, labels numbered by first vertex.
  std::vector<int> components() const;

 private:
  std::vector<NodeRef> roster_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

struct ExplicitEdges {
  std::vector<NodeEdge> edges;
};
struct ErdosRenyi {
  double p = 0.1;
};
struct WattsStrogatz {
  int k = 4;
  double rewire = 0.1;
};

/// Generator for social ties. Random generators only draw user-user ties;
/// `anchor_edges` (e.g. small cell to reachable users) are always added.
struct EdgeModel {
  std::variant<ExplicitEdges, ErdosRenyi, WattsStrogatz> generator = WattsStrogatz{};
  std::vector<NodeEdge> anchor_edges;
};

SocialGraph build_social_graph(std::vector<NodeRef> roster, const EdgeModel& model, std::uint64_t seed);

enum class BetweennessNorm {
  PairsExcludingEdge,  ///< (V-1)(V-2)
  SquaredOrder,        ///< (V-1)^2
};

struct BetweennessMatrix {
  SquareMatrix values;
  double denominator = 1.0;
};

/// Unnormalized edge betweenness summed over unordered vertex pairs (Brandes).
SquareMatrix raw_edge_betweenness(const SocialGraph& g);
BetweennessMatrix edge_betweenness(const SocialGraph& g,
                                   BetweennessNorm norm = BetweennessNorm::PairsExcludingEdge);

enum class SimilarityNorm {
  ColumnMax,   ///< simple additive weighting: divide by the column maximum
  RawClipped,  ///< raw value clipped to 1
};

struct SimilarityMatrices {
  SquareMatrix raw;
  SquareMatrix normalized;
  std::vector<double> column_max;
};

/// Resource-allocation style common-neighbour similarity: sum of 1/deg(z)
/// over shared neighbours z, zero across connected components.
SimilarityMatrices similarity(const SocialGraph& g, SimilarityNorm norm = SimilarityNorm::ColumnMax);

struct SocialDistanceMatrix {
  SquareMatrix values;
  double alpha = 0.5;
  double beta = 0.5;
};

/// X = alpha * sym(S) + beta * B with sym(S) = (S + S^T) / 2.
/// Throws ConfigError unless alpha, beta lie in [0,1] and sum to 1.
SocialDistanceMatrix social_distance(const SquareMatrix& betweenness, const SquareMatrix& similarity,
                                     double alpha, double beta);
SocialDistanceMatrix social_distance(const BetweennessMatrix& b, const SimilarityMatrices& s, double alpha,
                                     double beta);

/// Importance of every user: the row sum of X over all other vertices.
/// Indexed by user index; users absent from the graph score 0.
std::vector<double> importance_scores(const SocialGraph& g, const SocialDistanceMatrix& x);

struct ImportanceRanking {
  std::vector<double> scores;              ///< by user index
  std::vector<std::optional<int>> elected; ///< by cell index
};

/// Elects per cell the user with the highest score, ties to the lowest user index.
ImportanceRanking elect_important_ues(std::vector<double> scores, const std::vector<std::vector<int>>& cells);

/// Composite social/physical cost of using `peer` as relay; lower is preferred.
double d2d_peer_weight(double distance_m, double social_distance, double epsilon);

struct SocialParams {
  double alpha = 0.5;
  double beta = 0.5;
  BetweennessNorm betweenness_norm = BetweennessNorm::PairsExcludingEdge;
  SimilarityNorm similarity_norm = SimilarityNorm::ColumnMax;
};

/// All social metrics derived from one graph.
struct SocialAnalysis {
  SocialGraph graph;
  BetweennessMatrix betweenness;
  SimilarityMatrices similarity;
  SocialDistanceMatrix distance;
  std::vector<double> scores;

  /// Social distance between two network nodes (0 if either is not in the graph).
  double distance_between(NodeRef a, NodeRef b) const;
};

SocialAnalysis analyze(SocialGraph graph, const SocialParams& params);

}  // namespace socassoc

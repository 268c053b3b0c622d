#include "socassoc/golden.hpp"

#include <algorithm>
#include <cmath>

namespace socassoc {

namespace {

constexpr int kVertices = 5;
const char* const kLabels[kVertices] = {"S1", "M1", "M2", "M3", "M4"};

// Upper triangles of the tabulated matrices, row-major.
constexpr double kB[kVertices][kVertices] = {
    {0, 0.083, 0.125, 0.125, 0.167},
    {0.083, 0, 0.125, 0.125, 0.167},
    {0.125, 0.125, 0, 0.083, 0},
    {0.125, 0.125, 0.083, 0, 0},
    {0.167, 0.167, 0, 0, 0},
};
constexpr double kS[kVertices][kVertices] = {
    {0, 1, 0.583, 0.583, 0.25},
    {1, 0, 0.583, 0.583, 0.25},
    {0.583, 0.583, 0, 0.50, 0.50},
    {0.583, 0.583, 0.50, 0, 0.50},
    {0.25, 0.25, 0.50, 0.50, 0},
};
constexpr double kX[kVertices][kVertices] = {
    {0, 0.5208, 0.3227, 0.3227, 0.1667},
    {0.5208, 0, 0.3227, 0.3227, 0.1667},
    {0.3227, 0.3227, 0, 0.2708, 0.2500},
    {0.3227, 0.3227, 0.2708, 0, 0.2500},
    {0.1667, 0.1667, 0.2500, 0.2500, 0},
};

std::string pair_label(int r, int c) { return std::string(kLabels[r]) + "," + kLabels[c]; }

}  // namespace

SocialGraph reference_graph() {
  std::vector<NodeRef> roster{{NodeKind::Scbs, 0}, {NodeKind::Ue, 0}, {NodeKind::Ue, 1}, {NodeKind::Ue, 2},
                              {NodeKind::Ue, 3}};
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < kVertices; ++u) {
    for (std::size_t v = u + 1; v < kVertices; ++v) {
      const bool absent = (u == 2 && v == 4) || (u == 3 && v == 4);
      if (!absent) edges.emplace_back(u, v);
    }
  }
  return SocialGraph(std::move(roster), edges);
}

std::vector<GoldenRow> validate_reference(const GoldenOptions& options) {
  const SocialGraph g = reference_graph();
  const BetweennessMatrix b = edge_betweenness(g, options.betweenness_norm);
  const SimilarityMatrices s = similarity(g, SimilarityNorm::RawClipped);

  SquareMatrix half_b(kVertices);
  for (std::size_t r = 0; r < kVertices; ++r) {
    for (std::size_t c = 0; c < kVertices; ++c) half_b(r, c) = b.values(r, c) / 2.0;
  }
  const SocialDistanceMatrix x = social_distance(half_b, s.normalized, options.alpha, options.beta);

  std::vector<GoldenRow> rows;
  auto check = [&](const char* group, int r, int c, double expected, double actual) {
    rows.push_back({group, pair_label(r, c), expected, actual, std::abs(expected - actual) <= options.tolerance});
  };
  for (int r = 0; r < kVertices; ++r) {
    for (int c = r + 1; c < kVertices; ++c) {
      check("B", r, c, kB[r][c], b.values(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    }
  }
  // Raw common-neighbour scores below 1 are tabulated unchanged.
  for (int r = 0; r < kVertices; ++r) {
    for (int c = r + 1; c < kVertices; ++c) {
      if (kS[r][c] < 1.0) check("Q", r, c, kS[r][c], s.raw(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    }
  }
  for (int r = 0; r < kVertices; ++r) {
    for (int c = r + 1; c < kVertices; ++c) {
      check("S", r, c, kS[r][c], s.normalized(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    }
  }
  for (int r = 0; r < kVertices; ++r) {
    for (int c = r + 1; c < kVertices; ++c) {
      check("X", r, c, kX[r][c], x.values(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    }
  }

  const std::vector<double> scores = importance_scores(g, x);
  const auto top = std::max_element(scores.begin(), scores.end()) - scores.begin();
  const auto bottom = std::min_element(scores.begin(), scores.end()) - scores.begin();
  rows.push_back({"rank", "max=M1", 1.0, static_cast<double>(top + 1), top == 0});
  rows.push_back({"rank", "min=M4", 4.0, static_cast<double>(bottom + 1), bottom == 3});
  return rows;
}

}  // namespace socassoc

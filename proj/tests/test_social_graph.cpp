#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "socassoc/errors.hpp"
#include "socassoc/golden.hpp"
#include "socassoc/social_graph.hpp"

using namespace socassoc;

namespace {

SocialGraph random_graph(std::mt19937_64& rng, int v, double p) {
  std::vector<NodeRef> roster;
  for (int i = 0; i < v; ++i) roster.push_back({NodeKind::Ue, i});
  std::vector<Edge> edges;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (std::bernoulli_distribution(p)(rng)) edges.emplace_back(a, b);
    }
  }
  return SocialGraph(roster, edges);
}

}  // namespace

TEST_CASE("node labels round trip") {
  CHECK(node_label({NodeKind::Scbs, 0}) == "S1");
  CHECK(node_label({NodeKind::Ue, 41}) == "M42");
  CHECK(parse_node_label("M42") == NodeRef{NodeKind::Ue, 41});
  CHECK(parse_node_label("S3") == NodeRef{NodeKind::Scbs, 2});
  CHECK_THROWS_AS(parse_node_label("X1"), InputError);
  CHECK_THROWS_AS(parse_node_label("M0"), InputError);
  CHECK_THROWS_AS(parse_node_label("M"), InputError);
  CHECK_THROWS_AS(parse_node_label("M1x"), InputError);
}

TEST_CASE("graph construction rejects malformed input") {
  std::vector<NodeRef> roster{{NodeKind::Ue, 0}, {NodeKind::Ue, 1}};
  CHECK_THROWS_AS(SocialGraph(roster, {{0, 0}}), InputError);
  CHECK_THROWS_AS(SocialGraph(roster, {{0, 2}}), InputError);
  CHECK_THROWS_AS(SocialGraph({{NodeKind::Ue, 0}, {NodeKind::Ue, 0}}, {}), InputError);
  const SocialGraph g(roster, {{0, 1}, {1, 0}});
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("reference graph betweenness") {
  const SocialGraph g = reference_graph();
  const auto b = edge_betweenness(g);
  CHECK(b.denominator == doctest::Approx(12.0));
  CHECK(b.values(0, 1) == doctest::Approx(1.0 / 12.0));
  CHECK(b.values(0, 4) == doctest::Approx(2.0 / 12.0));
  CHECK(b.values(2, 4) == 0.0);

  const auto squared = edge_betweenness(g, BetweennessNorm::SquaredOrder);
  CHECK(squared.denominator == doctest::Approx(16.0));
  CHECK(squared.values(0, 1) == doctest::Approx(0.0625));
}

TEST_CASE("betweenness on tiny graphs uses a unit denominator") {
  const SocialGraph g({{NodeKind::Ue, 0}, {NodeKind::Ue, 1}}, {{0, 1}});
  const auto b = edge_betweenness(g);
  CHECK(b.denominator == 1.0);
  CHECK(b.values(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("Brandes agrees with path enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const SocialGraph g = random_graph(rng, 1 + trial % 8, 0.2 + 0.1 * (trial % 6));
    const SquareMatrix fast = raw_edge_betweenness(g);
    const SquareMatrix slow = oracle::brute_force_betweenness(g);
    for (std::size_t r = 0; r < g.vertex_count(); ++r) {
      for (std::size_t c = 0; c < g.vertex_count(); ++c) {
        CHECK(fast(r, c) == doctest::Approx(slow(r, c)).epsilon(1e-12));
        CHECK(fast(r, c) == fast(c, r));
        if (!g.adjacent(r, c)) CHECK(fast(r, c) == 0.0);
      }
    }
  }
}

TEST_CASE("betweenness and similarity are equivariant under relabeling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SocialGraph g = random_graph(rng, 7, 0.4);
    std::vector<std::size_t> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    const SocialGraph h(g.roster(), edges);

    const auto bg = raw_edge_betweenness(g), bh = raw_edge_betweenness(h);
    const auto sg = similarity(g).raw, sh = similarity(h).raw;
    for (std::size_t r = 0; r < g.vertex_count(); ++r) {
      for (std::size_t c = 0; c < g.vertex_count(); ++c) {
        CHECK(bg(r, c) == doctest::Approx(bh(perm[r], perm[c])));
        CHECK(sg(r, c) == doctest::Approx(sh(perm[r], perm[c])));
      }
    }
  }
}

TEST_CASE("similarity of the reference graph") {
  const SocialGraph g = reference_graph();
  const auto s = similarity(g);
  CHECK(s.raw(0, 1) == doctest::Approx(7.0 / 6.0));
  CHECK(s.raw(0, 2) == doctest::Approx(7.0 / 12.0));
  CHECK(s.raw(2, 3) == doctest::Approx(0.5));
  CHECK(s.raw(0, 4) == doctest::Approx(0.25));
  for (std::size_t c = 0; c < g.vertex_count(); ++c) {
    double col_max = 0.0;
    for (std::size_t r = 0; r < g.vertex_count(); ++r) col_max = std::max(col_max, s.normalized(r, c));
    CHECK(col_max == doctest::Approx(1.0));
  }
  const auto clipped = similarity(g, SimilarityNorm::RawClipped);
  CHECK(clipped.normalized(0, 1) == 1.0);
  CHECK(clipped.normalized(0, 2) == doctest::Approx(7.0 / 12.0));
}

TEST_CASE("similarity is zero across components") {
  std::vector<NodeRef> roster;
  for (int i = 0; i < 6; ++i) roster.push_back({NodeKind::Ue, i});
  const SocialGraph g(roster, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  const auto s = similarity(g);
  CHECK(s.raw(0, 2) == doctest::Approx(0.5));
  CHECK(s.raw(0, 3) == 0.0);
  CHECK(s.raw(2, 5) == 0.0);
  CHECK(g.components()[0] != g.components()[3]);
}

TEST_CASE("social distance weights") {
  const SocialGraph g = reference_graph();
  const auto b = edge_betweenness(g);
  const auto s = similarity(g);
  CHECK_THROWS_AS(social_distance(b, s, 0.6, 0.6), ConfigError);
  CHECK_THROWS_AS(social_distance(b, s, -0.1, 1.1), ConfigError);
  const auto only_b = social_distance(b, s, 0.0, 1.0);
  CHECK(only_b.values(0, 1) == doctest::Approx(b.values(0, 1)));
  const auto x = social_distance(b, s, 0.5, 0.5);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) CHECK(x.values(r, c) == doctest::Approx(x.values(c, r)));
  }
}

TEST_CASE("importance ranking of the reference graph") {
  const auto rows = validate_reference();
  for (const auto& row : rows) {
    INFO(row.group << " " << row.entry);
    CHECK(row.pass);
  }
  GoldenOptions squared;
  squared.betweenness_norm = BetweennessNorm::SquaredOrder;
  const auto failed = validate_reference(squared);
  CHECK(std::any_of(failed.begin(), failed.end(), [](const GoldenRow& r) { return r.group == "B" && !r.pass; }));

  GoldenOptions skewed;
  skewed.alpha = 0.8;
  skewed.beta = 0.2;
  const auto x_rows = validate_reference(skewed);
  CHECK(std::any_of(x_rows.begin(), x_rows.end(), [](const GoldenRow& r) { return r.group == "X" && !r.pass; }));
}

TEST_CASE("election picks the top score per cell, ties to the lowest user") {
  const auto ranking = elect_important_ues({0.5, 0.9, 0.9, 0.1}, {{0, 1, 2}, {}, {3}});
  REQUIRE(ranking.elected.size() == 3);
  CHECK(ranking.elected[0] == 1);
  CHECK_FALSE(ranking.elected[1].has_value());
  CHECK(ranking.elected[2] == 3);
}

TEST_CASE("peer weight grows with distance") {
  CHECK(d2d_peer_weight(5.0, 0.4, 0.05) < d2d_peer_weight(10.0, 0.4, 0.05));
  CHECK(d2d_peer_weight(0.0, 0.4, 0.05) == 0.0);
}

TEST_CASE("random social graphs are seeded") {
  std::vector<NodeRef> roster{{NodeKind::Scbs, 0}};
  for (int i = 0; i < 30; ++i) roster.push_back({NodeKind::Ue, i});
  EdgeModel ws;
  ws.anchor_edges = {{{NodeKind::Scbs, 0}, {NodeKind::Ue, 3}}};
  const auto a = build_social_graph(roster, ws, 5);
  const auto b = build_social_graph(roster, ws, 5);
  CHECK(a.edges() == b.edges());
  CHECK(a.adjacent(0, 4));
  // Random ties only join users; the small cell keeps its anchor only.
  CHECK(a.degree(0) == 1);

  EdgeModel none;
  none.generator = ErdosRenyi{0.0};
  CHECK(build_social_graph(roster, none, 1).edge_count() == 0);
  EdgeModel full;
  full.generator = ErdosRenyi{1.0};
  CHECK(build_social_graph(roster, full, 1).edge_count() == 30 * 29 / 2);

  EdgeModel bad;
  bad.generator = ExplicitEdges{{{{NodeKind::Ue, 0}, {NodeKind::Ue, 99}}}};
  CHECK_THROWS_AS(build_social_graph(roster, bad, 1), InputError);
  bad.generator = ErdosRenyi{1.5};
  CHECK_THROWS_AS(build_social_graph(roster, bad, 1), ConfigError);
}

TEST_CASE("analysis exposes distances between network nodes") {
  SocialAnalysis a = analyze(reference_graph(), SocialParams{});
  CHECK(a.distance_between({NodeKind::Scbs, 0}, {NodeKind::Ue, 0}) == doctest::Approx(a.distance.values(0, 1)));
  CHECK(a.distance_between({NodeKind::Ue, 0}, {NodeKind::Ue, 77}) == 0.0);
  REQUIRE(a.scores.size() == 4);
  for (int ue = 0; ue < 4; ++ue) CHECK(a.scores[static_cast<std::size_t>(ue)] == doctest::Approx(a.distance.values.row_sum(static_cast<std::size_t>(ue) + 1)));
}

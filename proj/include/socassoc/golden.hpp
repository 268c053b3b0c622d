#pragma once

#include <string>
#include <vector>

#include "socassoc/social_graph.hpp"

namespace socassoc {

/// Five-node reference graph: S1 and users M1..M4. Every pair is tied
/// except M2-M4 and M3-M4.
SocialGraph reference_graph();

struct GoldenOptions {
  BetweennessNorm betweenness_norm = BetweennessNorm::PairsExcludingEdge;
  double alpha = 0.5;
  double beta = 0.5;
  double tolerance = 1e-3;
};

struct GoldenRow {
  std::string group;  ///< "B", "Q", "S", "X" or "rank"
  std::string entry;  ///< e.g. "S1,M2"
  double expected = 0.0;
  double actual = 0.0;
  bool pass = false;
};

/// Recomputes the reference matrices and compares them with the tabulated
/// values. The X rows use the clipped raw similarity and half the
/// betweenness, which is how the tabulated X was produced.
std::vector<GoldenRow> validate_reference(const GoldenOptions& options = {});

}  // namespace socassoc

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socassoc/anneal.hpp"
#include "socassoc/matching.hpp"
#include "socassoc/radio.hpp"
#include "socassoc/social_graph.hpp"

namespace socassoc {

/// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

/// Edge list text: one `id id` pair per line, `#` comments.
std::vector<NodeEdge> parse_edge_list(const std::string& text);
std::vector<NodeEdge> load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const SocialGraph& g);

/// CSV with a header row of node ids; each row starts with its node id.
void write_matrix_csv(std::ostream& out, const SocialGraph& g, const SquareMatrix& m);

/// `id,kind,x,y`
void write_positions_csv(std::ostream& out, const RadioScenario& scenario);

/// `ue_id,sn_id,sn_kind,rate_bps,utility`; unassigned users carry empty
/// serving-node fields. An optional leading `# config_hash=<hex>` line
/// ties the file to the configuration that produced it.
void write_matching_csv(std::ostream& out, const Matching& matching, const UtilityReport& report,
                        std::optional<std::uint64_t> config_hash = std::nullopt);

struct MatchingFile {
  Matching matching;
  std::optional<std::uint64_t> config_hash;
};
MatchingFile read_matching_csv(std::istream& in, int scbs_count, int ue_count);

/// `iteration,welfare,best_welfare,accepted,move_kind`
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// Opens a file for writing or throws IoError naming the path.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace socassoc

#include "socassoc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "socassoc/errors.hpp"

namespace socassoc {

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::vector<NodeEdge> parse_edge_list(const std::string& text) {
  std::vector<NodeEdge> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw InputError("edge list line " + std::to_string(number) + ": expected two node ids");
    }
    out.emplace_back(parse_node_label(a), parse_node_label(b));
  }
  return out;
}

std::vector<NodeEdge> load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read edge list " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

void write_edge_list(std::ostream& out, const SocialGraph& g) {
  out << "# social graph: " << g.vertex_count() << " nodes, " << g.edge_count() << " edges\n";
  for (auto [u, v] : g.edges()) out << node_label(g.role(u)) << ' ' << node_label(g.role(v)) << '\n';
}

void write_matrix_csv(std::ostream& out, const SocialGraph& g, const SquareMatrix& m) {
  out << "id";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << ',' << node_label(g.role(v));
  out << '\n';
  for (std::size_t r = 0; r < g.vertex_count(); ++r) {
    out << node_label(g.role(r));
    for (std::size_t c = 0; c < g.vertex_count(); ++c) out << ',' << format_real(m(r, c));
    out << '\n';
  }
}

void write_positions_csv(std::ostream& out, const RadioScenario& scenario) {
  out << "id,kind,x,y\n";
  for (int i = 0; i < scenario.scbs_count(); ++i) {
    const auto& p = scenario.scbs[static_cast<std::size_t>(i)];
    out << node_label({NodeKind::Scbs, i}) << ",scbs," << format_real(p.x) << ',' << format_real(p.y) << '\n';
  }
  for (int i = 0; i < scenario.ue_count(); ++i) {
    const auto& p = scenario.ues[static_cast<std::size_t>(i)];
    out << node_label({NodeKind::Ue, i}) << ",ue," << format_real(p.x) << ',' << format_real(p.y) << '\n';
  }
}

void write_matching_csv(std::ostream& out, const Matching& matching, const UtilityReport& report,
                        std::optional<std::uint64_t> config_hash) {
  if (config_hash) {
    std::ostringstream hex;
    hex << std::hex << *config_hash;
    out << "# config_hash=" << hex.str() << '\n';
  }
  out << "ue_id,sn_id,sn_kind,rate_bps,utility\n";
  for (int ue = 0; ue < matching.ue_count(); ++ue) {
    out << node_label({NodeKind::Ue, ue}) << ',';
    if (auto sn = matching.serving(ue)) out << serving_node_label(*sn) << ',' << serving_node_kind_name(sn->kind);
    else out << ',';
    out << ',' << format_real(report.ue_rate[static_cast<std::size_t>(ue)]) << ','
        << format_real(report.ue_utility[static_cast<std::size_t>(ue)]) << '\n';
  }
}

MatchingFile read_matching_csv(std::istream& in, int scbs_count, int ue_count) {
  MatchingFile out{Matching(scbs_count, ue_count), std::nullopt};
  std::string line;
  bool header = false;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# config_hash=";
      if (line.rfind(tag, 0) == 0) {
        std::uint64_t h = 0;
        const std::string value = line.substr(tag.size());
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), h, 16);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
          throw InputError("matching file: malformed config hash");
        }
        out.config_hash = h;
      }
      continue;
    }
    if (!header) {
      if (line.rfind("ue_id,sn_id,sn_kind", 0) != 0) throw InputError("matching file: missing header row");
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() < 3) throw InputError("matching file line " + std::to_string(number) + ": too few fields");
    const NodeRef ue = parse_node_label(fields[0]);
    if (ue.kind != NodeKind::Ue || ue.index >= ue_count) {
      throw InputError("matching file line " + std::to_string(number) + ": unknown user " + fields[0]);
    }
    if (fields[1].empty()) continue;
    const NodeRef sn = parse_node_label(fields[1]);
    const bool relay = fields[2] == "relay";
    if ((relay && sn.kind != NodeKind::Ue) || (!relay && (fields[2] != "scbs" || sn.kind != NodeKind::Scbs))) {
      throw InputError("matching file line " + std::to_string(number) + ": inconsistent serving node kind");
    }
    if ((sn.kind == NodeKind::Scbs && sn.index >= scbs_count) || (sn.kind == NodeKind::Ue && sn.index >= ue_count)) {
      throw InputError("matching file line " + std::to_string(number) + ": unknown serving node " + fields[1]);
    }
    out.matching.assign(ue.index, relay ? ServingNode::relay(sn.index) : ServingNode::scbs(sn.index));
  }
  if (!header) throw InputError("matching file: missing header row");
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,welfare,best_welfare,accepted,move_kind\n";
  for (const auto& row : trace) {
    out << row.iteration << ',' << format_real(row.welfare) << ',' << format_real(row.best_welfare) << ','
        << (row.accepted ? 1 : 0) << ',' << trace_move_name(row.move) << '\n';
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace socassoc

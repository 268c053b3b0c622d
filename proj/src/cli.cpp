#include "socassoc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "socassoc/config.hpp"
#include "socassoc/errors.hpp"
#include "socassoc/golden.hpp"
#include "socassoc/harness.hpp"
#include "socassoc/io.hpp"

namespace socassoc {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  bool quiet = false;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_out) {
  cmd.add_option("--config", o.config_path, "key = value configuration file");
  cmd.add_option("--seed", o.seed, "base random seed (overrides the seed key)");
  if (with_out) cmd.add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd.add_option("--override", o.overrides, "KEY=VALUE applied after the file (repeatable)");
  cmd.add_flag("--quiet", o.quiet, "suppress the summary on standard output");
}

/// Loads the file, then overrides, then the seed flag. Any failure is a configuration error.
KeyValueConfig load_config(const CommonOptions& o) {
  KeyValueConfig kv;
  if (!o.config_path.empty()) {
    try {
      kv = KeyValueConfig::load(o.config_path);
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& assignment : o.overrides) kv.apply_override(assignment);
  if (o.seed) kv.set("seed", std::to_string(*o.seed));
  return kv;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

std::vector<std::string> labels_of(const std::vector<int>& ues) {
  std::vector<std::string> out;
  for (int ue : ues) out.push_back(node_label({NodeKind::Ue, ue}));
  return out;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& body) {
  auto out = open_output(path);
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

int cmd_run(const CommonOptions& o, std::ostream& out) {
  const KeyValueConfig kv = load_config(o);
  const RunConfig config = to_run_config(kv);
  const fs::path dir = o.out_dir;
  ensure_writable_dir(dir);

  const Drop drop = run_drop(config, config.n_scbs, config.n_ues, config.seed);
  const Game& game = drop.game;
  const std::uint64_t hash = kv.hash();

  json metrics;
  metrics["config"] = kv.effective();
  metrics["config_hash"] = hex(hash);
  metrics["n_scbs"] = game.scbs_count();
  metrics["n_ues"] = game.ue_count();
  metrics["important_ues"] = labels_of(game.relays);
  metrics["unservable"] = game.unservable_count();

  std::optional<double> baseline_rate;
  std::optional<double> social_rate;
  for (const MethodOutcome& outcome : drop.outcomes) {
    const std::string name = method_name(outcome.method);
    write_file(dir / ("matching_" + name + ".csv"),
               [&](std::ostream& f) { write_matching_csv(f, outcome.matching, outcome.report, hash); });
    json m;
    m["mean_rate"] = outcome.report.mean_rate();
    m["welfare"] = outcome.report.welfare;
    m["search_mean_rate"] = outcome.search_report.mean_rate();
    m["search_welfare"] = outcome.search_report.welfare;
    int relayed = 0;
    for (int ue = 0; ue < game.ue_count(); ++ue) {
      const auto sn = outcome.matching.serving(ue);
      if (sn && sn->kind == ServingNode::Kind::Relay) ++relayed;
    }
    m["relayed_ues"] = relayed;
    if (outcome.method == Method::SocialAware) {
      m["iterations"] = outcome.iterations;
      m["iterations_to_best"] = outcome.iterations_to_best;
      m["stabilize_swaps"] = outcome.stabilize_swaps;
      m["stable"] = outcome.stable;
      write_file(dir / "trace.csv", [&](std::ostream& f) { write_trace_csv(f, outcome.trace); });
      social_rate = outcome.report.mean_rate();
    } else {
      baseline_rate = outcome.report.mean_rate();
    }
    metrics["methods"][name] = m;
  }
  if (social_rate && baseline_rate && *baseline_rate > 0.0) {
    metrics["gain_pct"] = (*social_rate - *baseline_rate) / *baseline_rate * 100.0;
  }
  write_file(dir / "positions.csv", [&](std::ostream& f) { write_positions_csv(f, game.scenario); });
  write_file(dir / "social_edges.txt", [&](std::ostream& f) { write_edge_list(f, game.social.graph); });
  write_file(dir / "social_distance.csv",
             [&](std::ostream& f) { write_matrix_csv(f, game.social.graph, game.social.distance.values); });
  write_file(dir / "metrics.json", [&](std::ostream& f) { f << metrics.dump(2) << '\n'; });

  if (!o.quiet) {
    out << "scenario: " << game.scbs_count() << " small cells, " << game.ue_count() << " users, seed "
        << config.seed << '\n';
    for (const MethodOutcome& outcome : drop.outcomes) {
      out << std::left << std::setw(10) << method_name(outcome.method) << " mean rate "
          << format_real(outcome.report.mean_rate()) << " bit/s, welfare " << format_real(outcome.report.welfare)
          << '\n';
    }
    out << "wrote " << dir.string() << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o, std::ostream& out) {
  const KeyValueConfig kv = load_config(o);
  const RunConfig config = to_run_config(kv);
  ExperimentSpec spec = make_experiment(config, kv);
  spec.out_dir = fs::path(o.out_dir);
  const ExperimentResult result = run_experiment(spec);
  if (!o.quiet) {
    out << "x,method,mean_rate,gain_pct\n";
    for (const auto& a : result.aggregates) {
      out << a.x << ',' << method_name(a.method) << ',' << format_real(a.mean_rate) << ','
          << (a.gain_pct ? format_real(*a.gain_pct) : "") << '\n';
    }
    out << "wrote " << (fs::path(o.out_dir) / ("sweep_" + std::string(1, spec.sweep.variable) + ".csv")).string()
        << '\n';
  }
  return kExitOk;
}

int cmd_validate(const CommonOptions& o, std::ostream& out) {
  const RunConfig config = to_run_config(load_config(o));
  GoldenOptions options;
  options.betweenness_norm = config.social.betweenness_norm;
  options.alpha = config.social.alpha;
  options.beta = config.social.beta;
  const auto rows = validate_reference(options);

  bool all = true;
  out << std::left << std::setw(6) << "group" << std::setw(8) << "entry" << std::setw(10) << "expected"
      << std::setw(10) << "actual" << "result\n";
  for (const auto& row : rows) {
    all = all && row.pass;
    std::ostringstream expected, actual;
    expected << std::fixed << std::setprecision(4) << row.expected;
    actual << std::fixed << std::setprecision(4) << row.actual;
    out << std::left << std::setw(6) << row.group << std::setw(8) << row.entry << std::setw(10) << expected.str()
        << std::setw(10) << actual.str() << (row.pass ? "PASS" : "FAIL");
    if (!row.pass && row.group != "rank") out << " (diff " << format_real(row.actual - row.expected) << ')';
    out << '\n';
  }
  if (!o.quiet) out << (all ? "all reference checks passed\n" : "reference checks FAILED\n");
  return all ? kExitOk : kExitCheckFailed;
}

std::string describe(const Matching& matching, const Move& mv) {
  const auto where = [&](int ue) {
    const auto sn = matching.serving(ue);
    return sn ? serving_node_label(*sn) : std::string("-");
  };
  const std::string a = node_label({NodeKind::Ue, mv.ue});
  if (mv.kind == MoveKind::PairSwap) {
    const std::string b = node_label({NodeKind::Ue, mv.other});
    return "swap " + a + "@" + where(mv.ue) + " <-> " + b + "@" + where(mv.other);
  }
  return "relocate " + a + "@" + where(mv.ue) + " -> " + serving_node_label(mv.target);
}

int cmd_audit(const CommonOptions& o, const std::string& matching_path, std::ostream& out, std::ostream& err) {
  const KeyValueConfig kv = load_config(o);
  const RunConfig config = to_run_config(kv);
  std::ifstream in(matching_path);
  if (!in) throw IoError("cannot read matching file " + matching_path);

  const Game game = make_game(config, config.n_scbs, config.n_ues, config.seed);
  const MatchingFile file = read_matching_csv(in, game.scbs_count(), game.ue_count());
  if (file.config_hash && *file.config_hash != kv.hash()) {
    err << "error: matching file was produced by configuration " << hex(*file.config_hash)
        << ", current configuration is " << hex(kv.hash()) << '\n';
    return kExitConfig;
  }
  const auto violations = audit_stability(game, file.matching);
  for (const Move& mv : violations) out << describe(file.matching, mv) << '\n';
  if (!o.quiet) {
    out << (violations.empty() ? "stable: no approved swap\n"
                               : "unstable: " + std::to_string(violations.size()) + " approved swaps\n");
  }
  return violations.empty() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Socially aware user association for D2D-underlaid small cell networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "socassoc 1.0");

  CommonOptions run_opts, sweep_opts, validate_opts, audit_opts;
  std::string matching_path;

  auto* run = app.add_subcommand("run", "simulate one scenario with every configured method");
  add_common(*run, run_opts, true);
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over the small cell or user count");
  add_common(*sweep, sweep_opts, true);
  auto* validate = app.add_subcommand(
      "validate",
      "check social metrics against the built-in five-node reference (S1, M1..M4; every pair tied "
      "except M2-M4 and M3-M4)");
  add_common(*validate, validate_opts, false);
  auto* audit = app.add_subcommand("audit", "list approved swaps against a matching file");
  add_common(*audit, audit_opts, false);
  audit->add_option("matching", matching_path, "matching CSV written by `run`")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts, out);
    if (*sweep) return cmd_sweep(sweep_opts, out);
    if (*validate) return cmd_validate(validate_opts, out);
    if (*audit) return cmd_audit(audit_opts, matching_path, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace socassoc

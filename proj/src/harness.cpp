#include "socassoc/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "socassoc/errors.hpp"
#include "socassoc/io.hpp"

namespace socassoc {

std::uint64_t mix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t replication_seed(std::uint64_t base, std::uint64_t point, std::uint64_t replication) {
  return mix64(mix64(mix64(base) + point) + replication);
}

DropSeeds derive_seeds(std::uint64_t drop_seed) {
  return {mix64(drop_seed + 1), mix64(drop_seed + 2), mix64(drop_seed + 3)};
}

RadioScenario make_radio(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t seed) {
  const bool explicit_scbs = !config.scbs_positions.empty();
  const bool explicit_ues = !config.ue_positions.empty();
  if (explicit_scbs != explicit_ues) throw ConfigError("scbs_positions and ue_positions must be given together");
  if (explicit_scbs) return make_scenario(config.radio, config.scbs_positions, config.ue_positions, seed);
  return generate_topology(n_scbs, n_ues, config.radio, seed);
}

SocialGraph make_social_graph(const RunConfig& config, const RadioScenario& radio, std::uint64_t seed) {
  std::vector<NodeRef> roster;
  for (int i = 0; i < radio.scbs_count(); ++i) roster.push_back({NodeKind::Scbs, i});
  for (int m = 0; m < radio.ue_count(); ++m) roster.push_back({NodeKind::Ue, m});

  EdgeModel model;
  switch (config.social_model) {
    case SocialModelKind::WattsStrogatz: model.generator = WattsStrogatz{config.ws_k, config.ws_rewire}; break;
    case SocialModelKind::ErdosRenyi: model.generator = ErdosRenyi{config.er_p}; break;
    case SocialModelKind::EdgeList: model.generator = ExplicitEdges{load_edge_list(config.social_edges_file)}; break;
  }
  if (config.scbs_social_ties) {
    for (int i = 0; i < radio.scbs_count(); ++i) {
      for (int m = 0; m < radio.ue_count(); ++m) {
        if (radio.in_range({TxKind::Scbs, i}, m)) model.anchor_edges.push_back({{NodeKind::Scbs, i}, {NodeKind::Ue, m}});
      }
    }
  }
  return build_social_graph(std::move(roster), model, seed);
}

Game make_game(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t drop_seed) {
  const DropSeeds seeds = derive_seeds(drop_seed);
  RadioScenario radio = make_radio(config, n_scbs, n_ues, seeds.topology);
  SocialGraph graph = make_social_graph(config, radio, seeds.social);
  return build_game(std::move(radio), analyze(std::move(graph), config.social), config.game);
}

MethodOutcome solve_baseline(const Game& game) {
  MethodOutcome out;
  out.method = Method::MaxRssi;
  out.matching = initial_matching(game);
  out.report = evaluate(game, out.matching);
  out.search_best = out.matching;
  out.search_report = out.report;
  return out;
}

MethodOutcome solve_social(const Game& game, const RunConfig& config, std::uint64_t engine_seed) {
  SwapEngineConfig engine = config.engine;
  engine.seed = engine_seed;
  AnnealResult annealed = anneal_match(game, engine);

  MethodOutcome out;
  out.method = Method::SocialAware;
  out.iterations = annealed.iterations;
  out.iterations_to_best = annealed.best_iteration;
  out.trace = std::move(annealed.trace);
  out.search_best = annealed.best;
  out.search_report = std::move(annealed.report);
  out.matching = std::move(annealed.best);
  if (config.stabilize) {
    StabilizeResult stable = greedy_stabilize(game, out.matching);
    out.matching = std::move(stable.matching);
    out.stabilize_swaps = stable.swaps;
    out.stable = stable.converged;
  }
  out.report = evaluate(game, out.matching);
  return out;
}

Drop run_drop(const RunConfig& config, int n_scbs, int n_ues, std::uint64_t drop_seed) {
  Drop drop{make_game(config, n_scbs, n_ues, drop_seed), {}};
  for (Method m : config.methods) {
    drop.outcomes.push_back(m == Method::SocialAware ? solve_social(drop.game, config, derive_seeds(drop_seed).engine)
                                                     : solve_baseline(drop.game));
  }
  return drop;
}

ExperimentSpec make_experiment(const RunConfig& config, const KeyValueConfig& echo) {
  if (!config.sweep) throw ConfigError("configuration has no sweep block (sweep_variable, sweep_values)");
  if (!config.scbs_positions.empty()) throw ConfigError("sweeps require generated topologies, not explicit positions");
  if (config.methods.empty()) throw ConfigError("methods list is empty");
  ExperimentSpec spec;
  spec.base = config;
  spec.sweep = *config.sweep;
  spec.replications = config.replications;
  spec.methods = config.methods;
  spec.threads = config.threads;
  spec.echo = echo;
  return spec;
}

void ensure_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  const auto probe = dir / ".socassoc_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.methods.empty()) throw ConfigError("methods list is empty");
  if (spec.replications < 1) throw ConfigError("replications must be at least 1");
  if (spec.out_dir) ensure_writable_dir(*spec.out_dir);

  struct Task {
    int point;
    int replication;
  };
  std::vector<Task> tasks;
  for (int p = 0; p < static_cast<int>(spec.sweep.values.size()); ++p) {
    for (int r = 0; r < spec.replications; ++r) tasks.push_back({p, r});
  }

  RunConfig config = spec.base;
  config.methods = spec.methods;
  const std::size_t per_task = spec.methods.size();
  std::vector<ReplicationRow> rows(tasks.size() * per_task);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const Task task = tasks[t];
        const int x = spec.sweep.values[static_cast<std::size_t>(task.point)];
        const int n_scbs = spec.sweep.variable == 'N' ? x : config.n_scbs;
        const int n_ues = spec.sweep.variable == 'M' ? x : config.n_ues;
        const std::uint64_t seed = replication_seed(config.seed, static_cast<std::uint64_t>(task.point),
                                                    static_cast<std::uint64_t>(task.replication));
        const Drop drop = run_drop(config, n_scbs, n_ues, seed);
        for (std::size_t k = 0; k < per_task; ++k) {
          const MethodOutcome& o = drop.outcomes[k];
          ReplicationRow& row = rows[t * per_task + k];
          row.x = x;
          row.point = task.point;
          row.replication = task.replication;
          row.method = o.method;
          row.seed = seed;
          row.mean_rate = o.search_report.mean_rate();
          row.welfare = o.search_report.welfare;
          row.iterations_to_best = o.iterations_to_best;
          row.unservable = drop.game.unservable_count();
          row.post_pass_welfare = o.report.welfare;
          row.post_pass_swaps = o.stabilize_swaps;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result{std::move(rows), {}};
  result.aggregates = aggregate(result.rows, spec.methods);
  if (spec.out_dir) emit_results(result, spec, *spec.out_dir);
  return result;
}

namespace {

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& v) {
  Stats s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

std::optional<double> gain(double value, double reference) {
  if (!(reference > 0.0)) return std::nullopt;
  return (value - reference) / reference * 100.0;
}

}  // namespace

std::vector<PointAggregate> aggregate(const std::vector<ReplicationRow>& rows, const std::vector<Method>& methods) {
  std::vector<int> xs;
  for (const auto& r : rows) {
    if (std::find(xs.begin(), xs.end(), r.x) == xs.end()) xs.push_back(r.x);
  }
  std::vector<PointAggregate> out;
  for (int x : xs) {
    const std::size_t first = out.size();
    for (Method m : methods) {
      std::vector<double> rate, welfare, iters;
      for (const auto& r : rows) {
        if (r.x != x || r.method != m) continue;
        rate.push_back(r.mean_rate);
        welfare.push_back(r.welfare);
        iters.push_back(static_cast<double>(r.iterations_to_best));
      }
      if (rate.empty()) continue;
      const Stats sr = stats_of(rate), sw = stats_of(welfare), si = stats_of(iters);
      PointAggregate a;
      a.x = x;
      a.method = m;
      a.count = static_cast<int>(rate.size());
      a.mean_rate = sr.mean;
      a.std_rate = sr.stddev;
      a.mean_welfare = sw.mean;
      a.std_welfare = sw.stddev;
      a.mean_iters = si.mean;
      a.std_defined = rate.size() > 1;
      out.push_back(a);
    }
    const PointAggregate* base = nullptr;
    for (std::size_t i = first; i < out.size(); ++i) {
      if (out[i].method == Method::MaxRssi) base = &out[i];
    }
    if (!base) continue;
    const double base_rate = base->mean_rate;
    const double base_welfare = base->mean_welfare;
    for (std::size_t i = first; i < out.size(); ++i) {
      if (out[i].method != Method::SocialAware) continue;
      out[i].gain_pct = gain(out[i].mean_rate, base_rate);
      out[i].welfare_gain_pct = gain(out[i].mean_welfare, base_welfare);
    }
  }
  return out;
}

namespace {

using nlohmann::json;

Method method_from_name(const std::string& s) {
  if (s == "social") return Method::SocialAware;
  if (s == "max_rssi") return Method::MaxRssi;
  throw InputError("unknown method '" + s + "' in summary");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void emit_results(const ExperimentResult& result, const ExperimentSpec& spec, const std::filesystem::path& dir) {
  if (spec.methods.empty()) throw ConfigError("methods list is empty");
  if (result.rows.empty()) throw ConfigError("no results to write");
  ensure_writable_dir(dir);
  const std::string var(1, spec.sweep.variable);

  {
    auto out = open_output(dir / ("sweep_" + var + ".csv"));
    out << "x,method,mean_rate,std_rate,mean_welfare,std_welfare,mean_iters,gain_pct\n";
    for (const auto& a : result.aggregates) {
      out << a.x << ',' << method_name(a.method) << ',' << format_real(a.mean_rate) << ','
          << format_real(a.std_rate) << ',' << format_real(a.mean_welfare) << ',' << format_real(a.std_welfare)
          << ',' << format_real(a.mean_iters) << ',' << (a.gain_pct ? format_real(*a.gain_pct) : "") << '\n';
    }
    if (!out) throw IoError("failed writing " + (dir / ("sweep_" + var + ".csv")).string());
  }
  {
    auto out = open_output(dir / ("replications_" + var + ".csv"));
    out << "x,point,replication,method,seed,mean_rate,welfare,iterations_to_best,unservable,post_pass_welfare,"
           "post_pass_swaps\n";
    for (const auto& r : result.rows) {
      out << r.x << ',' << r.point << ',' << r.replication << ',' << method_name(r.method) << ',' << r.seed << ','
          << format_real(r.mean_rate) << ',' << format_real(r.welfare) << ',' << r.iterations_to_best << ','
          << r.unservable << ',' << format_real(r.post_pass_welfare) << ',' << r.post_pass_swaps << '\n';
    }
    if (!out) throw IoError("failed writing " + (dir / ("replications_" + var + ".csv")).string());
  }

  json summary;
  summary["config"] = spec.echo.effective();
  summary["config_hash"] = spec.echo.hash();
  summary["seed_derivation"] =
      "drop = mix64(mix64(mix64(seed) + point) + replication); topology = mix64(drop + 1), social = mix64(drop + "
      "2), engine = mix64(drop + 3); mix64 = splitmix64 finalizer";
  summary["sweep"] = {{"variable", var}, {"values", spec.sweep.values}, {"replications", spec.replications}};
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(method_name(m));
  summary["methods"] = methods;
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"x", r.x}, {"point", r.point}, {"replication", r.replication}, {"method", method_name(r.method)},
                    {"seed", r.seed}, {"mean_rate", r.mean_rate}, {"welfare", r.welfare},
                    {"iterations_to_best", r.iterations_to_best}, {"unservable", r.unservable},
                    {"post_pass_welfare", r.post_pass_welfare}, {"post_pass_swaps", r.post_pass_swaps}});
  }
  summary["replications"] = rows;
  json aggs = json::array();
  for (const auto& a : result.aggregates) {
    aggs.push_back({{"x", a.x}, {"method", method_name(a.method)}, {"count", a.count}, {"mean_rate", a.mean_rate},
                    {"std_rate", a.std_rate}, {"mean_welfare", a.mean_welfare}, {"std_welfare", a.std_welfare},
                    {"mean_iters", a.mean_iters}, {"std_defined", a.std_defined},
                    {"gain_pct", optional_json(a.gain_pct)}, {"welfare_gain_pct", optional_json(a.welfare_gain_pct)}});
  }
  summary["aggregates"] = aggs;
  summary["generated_at"] = utc_timestamp();

  auto out = open_output(dir / ("summary_" + var + ".json"));
  out << summary.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + (dir / ("summary_" + var + ".json")).string());
}

ExperimentResult read_summary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  json summary;
  try {
    in >> summary;
    ExperimentResult out;
    for (const auto& r : summary.at("replications")) {
      ReplicationRow row;
      row.x = r.at("x").get<int>();
      row.point = r.at("point").get<int>();
      row.replication = r.at("replication").get<int>();
      row.method = method_from_name(r.at("method").get<std::string>());
      row.seed = r.at("seed").get<std::uint64_t>();
      row.mean_rate = r.at("mean_rate").get<double>();
      row.welfare = r.at("welfare").get<double>();
      row.iterations_to_best = r.at("iterations_to_best").get<int>();
      row.unservable = r.at("unservable").get<int>();
      row.post_pass_welfare = r.at("post_pass_welfare").get<double>();
      row.post_pass_swaps = r.at("post_pass_swaps").get<int>();
      out.rows.push_back(row);
    }
    for (const auto& a : summary.at("aggregates")) {
      PointAggregate p;
      p.x = a.at("x").get<int>();
      p.method = method_from_name(a.at("method").get<std::string>());
      p.count = a.at("count").get<int>();
      p.mean_rate = a.at("mean_rate").get<double>();
      p.std_rate = a.at("std_rate").get<double>();
      p.mean_welfare = a.at("mean_welfare").get<double>();
      p.std_welfare = a.at("std_welfare").get<double>();
      p.mean_iters = a.at("mean_iters").get<double>();
      p.std_defined = a.at("std_defined").get<bool>();
      p.gain_pct = optional_from(a.at("gain_pct"));
      p.welfare_gain_pct = optional_from(a.at("welfare_gain_pct"));
      out.aggregates.push_back(p);
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError("malformed summary " + path.string() + ": " + e.what());
  }
}

}  // namespace socassoc

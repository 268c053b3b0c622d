#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "socassoc/cli.hpp"
#include "socassoc/config.hpp"
#include "socassoc/harness.hpp"

using namespace socassoc;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path root;
  Workspace() {
    static int counter = 0;
    root = fs::temp_directory_path() /
           ("socassoc_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return root / name;
  }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kDense = "n_scbs = 2\nn_ues = 8\nmacro_radius_m = 60\n";

}  // namespace

TEST_CASE("validate reports reference agreement") {
  Workspace ws;
  const auto cfg = ws.write("c.cfg", "");
  const auto ok = cli({"validate", "--config", cfg.string()});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("PASS") != std::string::npos);

  const auto squared = cli({"validate", "--config", cfg.string(), "--override", "betweenness_denominator=squared"});
  CHECK(squared.code == kExitCheckFailed);
  CHECK(squared.out.find("diff") != std::string::npos);

  CHECK(cli({"validate", "--override", "social_alpha=0.8", "--override", "social_beta=0.2"}).code == kExitCheckFailed);
}

TEST_CASE("configuration errors exit with code 1") {
  Workspace ws;
  CHECK(cli({"run", "--config", (ws.root / "missing.cfg").string()}).code == kExitConfig);
  CHECK(cli({"run", "--override", "no_such_key=1", "--out", (ws.root / "o").string()}).code == kExitConfig);
  CHECK(cli({"run", "--override", "social_alpha=0.9", "--out", (ws.root / "o").string()}).code == kExitConfig);
  CHECK(cli({"frobnicate"}).code == kExitConfig);
  CHECK(cli({"sweep", "--out", (ws.root / "o").string()}).code == kExitConfig);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("run writes its artifacts and echoes the effective configuration") {
  Workspace ws;
  const auto cfg = ws.write("c.cfg", "n_ues = 30\nmax_iterations = 300\n");
  const auto out = ws.root / "run";
  const auto r = cli({"run", "--config", cfg.string(), "--override", "n_scbs=8", "--seed", "5", "--out", out.string()});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"matching_social.csv", "matching_max_rssi.csv", "trace.csv", "positions.csv",
                        "social_edges.txt", "social_distance.csv", "metrics.json"}) {
    INFO(f);
    CHECK(fs::exists(out / f));
  }
  const auto metrics = nlohmann::json::parse(slurp(out / "metrics.json"));
  CHECK(metrics["config"]["n_scbs"] == "8");
  CHECK(metrics["config"]["seed"] == "5");
  CHECK(metrics["config"]["d2d_radius_m"] == "20");
  CHECK(metrics["n_scbs"] == 8);
  CHECK(metrics["methods"]["social"].contains("welfare"));
  CHECK(slurp(out / "matching_social.csv").rfind("# config_hash=", 0) == 0);

  const auto audit = cli({"audit", "--config", cfg.string(), "--override", "n_scbs=8", "--seed", "5",
                          (out / "matching_social.csv").string()});
  CHECK(audit.code == kExitOk);
  CHECK(audit.out.find("stable") != std::string::npos);

  const auto other = cli({"audit", "--config", cfg.string(), "--override", "n_scbs=9", "--seed", "5",
                          (out / "matching_social.csv").string()});
  CHECK(other.code == kExitConfig);
  CHECK(other.err.find("configuration") != std::string::npos);

  CHECK(cli({"audit", "--config", cfg.string(), (ws.root / "absent.csv").string()}).code == kExitRuntime);
}

TEST_CASE("audit lists approved swaps of an unstable matching") {
  Workspace ws;
  const auto cfg = ws.write("c.cfg", kDense);
  const RunConfig config = to_run_config(KeyValueConfig::parse(kDense));
  std::uint64_t seed = 1;
  for (; seed < 200; ++seed) {
    const Game g = make_game(config, config.n_scbs, config.n_ues, seed);
    if (!audit_stability(g, initial_matching(g)).empty()) break;
  }
  REQUIRE(seed < 200);
  const auto out = ws.root / "run";
  REQUIRE(cli({"run", "--config", cfg.string(), "--seed", std::to_string(seed), "--out", out.string(), "--quiet"})
              .code == kExitOk);
  // The file has no hash line once edited by hand.
  std::string text = slurp(out / "matching_max_rssi.csv");
  text = text.substr(text.find('\n') + 1);
  const auto edited = ws.write("edited.csv", text);
  const auto audit = cli({"audit", "--config", cfg.string(), "--seed", std::to_string(seed), edited.string()});
  CHECK(audit.code == kExitCheckFailed);
  const bool listed = audit.out.find("swap M") != std::string::npos || audit.out.find("relocate M") != std::string::npos;
  CHECK(listed);
}

TEST_CASE("audit of an all-unservable layout is stable") {
  Workspace ws;
  const auto cfg = ws.write("c.cfg", "scbs_positions = 0,0\nue_positions = 200,0; 0,300\n");
  const auto out = ws.root / "run";
  REQUIRE(cli({"run", "--config", cfg.string(), "--out", out.string(), "--quiet"}).code == kExitOk);
  CHECK(cli({"audit", "--config", cfg.string(), (out / "matching_social.csv").string()}).code == kExitOk);
}

TEST_CASE("sweeps write aggregated and per-replication files") {
  Workspace ws;
  for (const char* variable : {"N", "M"}) {
    const std::string values = variable[0] == 'N' ? "2,4" : "20,40";
    const auto cfg = ws.write(std::string("sweep_") + variable + ".cfg",
                              std::string("n_scbs = 4\nn_ues = 20\nmacro_radius_m = 120\nreplications = 2\nmax_iterations = 200\n") +
                                  "sweep_variable = " + variable + "\nsweep_values = " + values + "\n");
    const auto out = ws.root / variable;
    REQUIRE(cli({"sweep", "--config", cfg.string(), "--out", out.string(), "--quiet"}).code == kExitOk);
    const std::string sweep = slurp(out / (std::string("sweep_") + variable + ".csv"));
    CHECK(sweep.rfind("x,method,mean_rate,std_rate,mean_welfare,std_welfare,mean_iters,gain_pct\n", 0) == 0);
    std::istringstream lines(sweep);
    std::string line;
    std::getline(lines, line);
    int social_rows = 0;
    while (std::getline(lines, line)) {
      if (line.find(",social,") == std::string::npos) continue;
      ++social_rows;
      CHECK(line.back() != ',');
    }
    CHECK(social_rows == 2);
    CHECK(fs::exists(out / (std::string("replications_") + variable + ".csv")));
    const auto summary = nlohmann::json::parse(slurp(out / (std::string("summary_") + variable + ".json")));
    CHECK(summary["config"]["sweep_variable"] == variable);
  }
}

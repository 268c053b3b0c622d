#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socassoc/anneal.hpp"
#include "socassoc/matching.hpp"
#include "socassoc/radio.hpp"
#include "socassoc/social_graph.hpp"

namespace socassoc {

struct ConfigKey {
  const char* name;
  const char* default_value;
  const char* help;
};

/// Every key accepted in configuration files and overrides.
const std::vector<ConfigKey>& config_keys();

/// `key = value` text with `#` comments. Keys outside config_keys() are rejected.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, const std::string& origin = "<config>");
  /// Throws IoError if the file cannot be read.
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  /// Applies a `key=value` override.
  void apply_override(const std::string& assignment);

  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Sorted `key = value` lines; stable across formatting differences.
  std::string canonical() const;
  std::uint64_t hash() const;
  /// Every known key with its set value or default.
  std::map<std::string, std::string> effective() const;

 private:
  std::map<std::string, std::string> entries_;
};

enum class Method { SocialAware, MaxRssi };
const char* method_name(Method m);

enum class SocialModelKind { WattsStrogatz, ErdosRenyi, EdgeList };

struct SweepSpec {
  char variable = 'N';  ///< 'N' sweeps SCBS count, 'M' sweeps user count
  std::vector<int> values;
};

/// Typed view of a configuration.
struct RunConfig {
  int n_scbs = 16;
  int n_ues = 150;
  std::uint64_t seed = 1;
  RadioParams radio;
  std::vector<Position> scbs_positions;  ///< explicit layout, overrides n_scbs when set
  std::vector<Position> ue_positions;

  SocialParams social;
  SocialModelKind social_model = SocialModelKind::WattsStrogatz;
  int ws_k = 4;
  double ws_rewire = 0.1;
  double er_p = 0.1;
  std::string social_edges_file;
  /// Tie every SCBS to the users inside its service radius.
  bool scbs_social_ties = true;

  GameParams game;
  SwapEngineConfig engine;
  bool stabilize = true;

  std::optional<SweepSpec> sweep;
  int replications = 20;
  std::vector<Method> methods{Method::SocialAware, Method::MaxRssi};
  int threads = 0;  ///< 0: hardware concurrency
};

/// Throws ConfigError on malformed or out-of-domain values.
RunConfig to_run_config(const KeyValueConfig& kv);

}  // namespace socassoc

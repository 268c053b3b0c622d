#include "socassoc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "socassoc/errors.hpp"

namespace socassoc {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"n_scbs", "16", "number of small cells"},
      {"n_ues", "150", "number of users"},
      {"seed", "1", "base random seed"},
      {"system_bandwidth_hz", "5e6", "bandwidth per serving node"},
      {"macro_radius_m", "500", "deployment disk radius"},
      {"noise_psd_dbm_hz", "-174", "noise power spectral density"},
      {"scbs_radius_m", "50", "SCBS service radius"},
      {"scbs_power_dbm", "23", "SCBS transmit power"},
      {"d2d_radius_m", "20", "device-to-device service radius"},
      {"ue_power_dbm", "15", "user transmit power"},
      {"d2d_pathloss_alpha", "3", "device-to-device pathloss exponent"},
      {"subcarriers", "16", "subcarriers per serving node"},
      {"scbs_pathloss_model", "3gpp_pico", "3gpp_pico | power_law"},
      {"scbs_pathloss_intercept_db", "140.7", "SCBS pathloss at 1 km"},
      {"scbs_pathloss_slope_db", "36.7", "SCBS pathloss per decade"},
      {"min_distance_m", "1", "pathloss distance floor"},
      {"d2d_interference", "true", "relays interfere with co-channel receivers"},
      {"gain_factor", "1", "multiplicative channel gain"},
      {"scbs_positions", "", "explicit SCBS layout: x,y; x,y; ..."},
      {"ue_positions", "", "explicit user layout: x,y; x,y; ..."},
      {"social_alpha", "0.5", "similarity weight in the social distance"},
      {"social_beta", "0.5", "betweenness weight in the social distance"},
      {"betweenness_denominator", "pairs", "pairs: (V-1)(V-2) | squared: (V-1)^2"},
      {"similarity_norm", "column_max", "column_max | raw_clipped"},
      {"social_model", "watts_strogatz", "watts_strogatz | erdos_renyi | edge_list"},
      {"ws_k", "4", "Watts-Strogatz lattice degree"},
      {"ws_rewire", "0.1", "Watts-Strogatz rewiring probability"},
      {"er_p", "0.1", "Erdos-Renyi edge probability"},
      {"social_edges_file", "", "edge list used when social_model = edge_list"},
      {"scbs_social_ties", "true", "tie each SCBS to the users it can serve"},
      {"min_rate_bps", "0", "minimum rate per user"},
      {"scbs_quota", "0", "users per SCBS (0: subcarrier count)"},
      {"relay_quota", "3", "users per relay"},
      {"x_floor", "0.01", "lower clamp of the relay social distance"},
      {"enable_d2d", "true", "allow relayed association"},
      {"d2d_epsilon", "0", "peer weight normalization (0: 1/d2d radius)"},
      {"max_iterations", "2000", "swap search iterations"},
      {"schedule_start", "1", "initial sigmoid sharpness"},
      {"schedule_end", "50", "final sigmoid sharpness"},
      {"schedule_mode", "inverse", "inverse | literal"},
      {"early_stop_window", "200", "stop after this many iterations without an accepted move"},
      {"pair_swap_fraction", "0.5", "share of iterations proposing pair swaps"},
      {"stabilize", "true", "greedy two-sided stabilization after the search"},
      {"sweep_variable", "", "N | M"},
      {"sweep_values", "", "comma separated sweep points"},
      {"replications", "20", "Monte Carlo drops per sweep point"},
      {"methods", "social,max_rssi", "methods to compare"},
      {"threads", "0", "worker threads (0: hardware)"},
  };
  return keys;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool known_key(const std::string& key) {
  const auto& keys = config_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const ConfigKey& k) { return key == k.name; });
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& origin) {
  KeyValueConfig out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    try {
      out.set(key, trim(std::string_view(body).substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (!known_key(key)) throw ConfigError("unknown key '" + key + "'");
  entries_[key] = value;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  set(trim(std::string_view(assignment).substr(0, eq)), trim(std::string_view(assignment).substr(eq + 1)));
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t KeyValueConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::map<std::string, std::string> KeyValueConfig::effective() const {
  std::map<std::string, std::string> out;
  for (const auto& key : config_keys()) out[key.name] = key.default_value;
  for (const auto& [k, v] : entries_) out[k] = v;
  return out;
}

const char* method_name(Method m) { return m == Method::SocialAware ? "social" : "max_rssi"; }

namespace {

class Reader {
 public:
  explicit Reader(const KeyValueConfig& kv) : kv_(kv) {}

  double real(const char* key, double fallback) const {
    auto v = kv_.get(key);
    if (!v || v->empty()) return fallback;
    try {
      std::size_t used = 0;
      const double out = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing");
      return out;
    } catch (const std::exception&) {
      throw ConfigError(std::string("key '") + key + "' expects a number, got '" + *v + "'");
    }
  }

  long long integer(const char* key, long long fallback) const {
    auto v = kv_.get(key);
    if (!v || v->empty()) return fallback;
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError(std::string("key '") + key + "' expects an integer, got '" + *v + "'");
    }
    return out;
  }

  std::uint64_t unsigned64(const char* key, std::uint64_t fallback) const {
    auto v = kv_.get(key);
    if (!v || v->empty()) return fallback;
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError(std::string("key '") + key + "' expects an unsigned integer, got '" + *v + "'");
    }
    return out;
  }

  bool boolean(const char* key, bool fallback) const {
    auto v = kv_.get(key);
    if (!v || v->empty()) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ConfigError(std::string("key '") + key + "' expects a boolean, got '" + *v + "'");
  }

  std::string text(const char* key, const std::string& fallback) const {
    auto v = kv_.get(key);
    return v && !v->empty() ? *v : fallback;
  }

 private:
  const KeyValueConfig& kv_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Position> parse_positions(const std::string& key, const std::string& value) {
  std::vector<Position> out;
  for (const auto& pair : split(value, ';')) {
    const auto xy = split(pair, ',');
    try {
      if (xy.size() != 2) throw std::invalid_argument("arity");
      out.push_back({std::stod(xy[0]), std::stod(xy[1])});
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "' expects 'x,y; x,y; ...', got '" + pair + "'");
    }
  }
  return out;
}

int positive_int(const char* key, long long v) {
  if (v < 1 || v > 1'000'000) throw ConfigError(std::string("key '") + key + "' must be a positive count");
  return static_cast<int>(v);
}

}  // namespace

RunConfig to_run_config(const KeyValueConfig& kv) {
  const Reader r(kv);
  RunConfig c;
  c.n_scbs = positive_int("n_scbs", r.integer("n_scbs", c.n_scbs));
  c.n_ues = positive_int("n_ues", r.integer("n_ues", c.n_ues));
  c.seed = r.unsigned64("seed", c.seed);

  auto& radio = c.radio;
  radio.system_bandwidth_hz = r.real("system_bandwidth_hz", radio.system_bandwidth_hz);
  radio.macro_radius_m = r.real("macro_radius_m", radio.macro_radius_m);
  radio.noise_psd_dbm_hz = r.real("noise_psd_dbm_hz", radio.noise_psd_dbm_hz);
  radio.scbs_radius_m = r.real("scbs_radius_m", radio.scbs_radius_m);
  radio.scbs_power_dbm = r.real("scbs_power_dbm", radio.scbs_power_dbm);
  radio.d2d_radius_m = r.real("d2d_radius_m", radio.d2d_radius_m);
  radio.ue_power_dbm = r.real("ue_power_dbm", radio.ue_power_dbm);
  radio.pathloss.d2d_alpha = r.real("d2d_pathloss_alpha", radio.pathloss.d2d_alpha);
  radio.subcarriers = positive_int("subcarriers", r.integer("subcarriers", radio.subcarriers));
  const std::string model = r.text("scbs_pathloss_model", "3gpp_pico");
  if (model == "3gpp_pico") {
    radio.pathloss.scbs_model = ScbsPathlossModel::ThreeGppPico;
  } else if (model == "power_law") {
    radio.pathloss.scbs_model = ScbsPathlossModel::PowerLaw;
  } else {
    throw ConfigError("scbs_pathloss_model must be 3gpp_pico or power_law");
  }
  radio.pathloss.scbs_intercept_db = r.real("scbs_pathloss_intercept_db", radio.pathloss.scbs_intercept_db);
  radio.pathloss.scbs_slope_db = r.real("scbs_pathloss_slope_db", radio.pathloss.scbs_slope_db);
  radio.pathloss.min_distance_m = r.real("min_distance_m", radio.pathloss.min_distance_m);
  radio.d2d_interference = r.boolean("d2d_interference", radio.d2d_interference);
  radio.gain_factor = r.real("gain_factor", radio.gain_factor);
  if (!(radio.system_bandwidth_hz > 0 && radio.macro_radius_m > 0 && radio.scbs_radius_m > 0 &&
        radio.d2d_radius_m > 0 && radio.pathloss.min_distance_m > 0 && radio.gain_factor > 0)) {
    throw ConfigError("bandwidth, radii, distance floor and gain factor must be positive");
  }

  if (auto v = kv.get("scbs_positions"); v && !v->empty()) {
    c.scbs_positions = parse_positions("scbs_positions", *v);
    c.n_scbs = static_cast<int>(c.scbs_positions.size());
  }
  if (auto v = kv.get("ue_positions"); v && !v->empty()) {
    c.ue_positions = parse_positions("ue_positions", *v);
    c.n_ues = static_cast<int>(c.ue_positions.size());
  }

  c.social.alpha = r.real("social_alpha", c.social.alpha);
  c.social.beta = r.real("social_beta", c.social.beta);
  if (!(c.social.alpha >= 0 && c.social.alpha <= 1 && c.social.beta >= 0 && c.social.beta <= 1) ||
      std::abs(c.social.alpha + c.social.beta - 1.0) > 1e-9) {
    throw ConfigError("social_alpha and social_beta must lie in [0,1] and sum to 1");
  }
  const std::string denom = r.text("betweenness_denominator", "pairs");
  if (denom == "pairs") {
    c.social.betweenness_norm = BetweennessNorm::PairsExcludingEdge;
  } else if (denom == "squared") {
    c.social.betweenness_norm = BetweennessNorm::SquaredOrder;
  } else {
    throw ConfigError("betweenness_denominator must be pairs or squared");
  }
  const std::string sim = r.text("similarity_norm", "column_max");
  if (sim == "column_max") {
    c.social.similarity_norm = SimilarityNorm::ColumnMax;
  } else if (sim == "raw_clipped") {
    c.social.similarity_norm = SimilarityNorm::RawClipped;
  } else {
    throw ConfigError("similarity_norm must be column_max or raw_clipped");
  }
  const std::string social_model = r.text("social_model", "watts_strogatz");
  if (social_model == "watts_strogatz") {
    c.social_model = SocialModelKind::WattsStrogatz;
  } else if (social_model == "erdos_renyi") {
    c.social_model = SocialModelKind::ErdosRenyi;
  } else if (social_model == "edge_list") {
    c.social_model = SocialModelKind::EdgeList;
  } else {
    throw ConfigError("social_model must be watts_strogatz, erdos_renyi or edge_list");
  }
  c.ws_k = static_cast<int>(r.integer("ws_k", c.ws_k));
  if (c.ws_k < 0) throw ConfigError("ws_k must be non-negative");
  c.ws_rewire = r.real("ws_rewire", c.ws_rewire);
  c.er_p = r.real("er_p", c.er_p);
  if (!(c.ws_rewire >= 0 && c.ws_rewire <= 1)) throw ConfigError("ws_rewire must lie in [0,1]");
  if (!(c.er_p >= 0 && c.er_p <= 1)) throw ConfigError("er_p must lie in [0,1]");
  c.social_edges_file = r.text("social_edges_file", "");
  if (c.social_model == SocialModelKind::EdgeList && c.social_edges_file.empty()) {
    throw ConfigError("social_model = edge_list requires social_edges_file");
  }
  c.scbs_social_ties = r.boolean("scbs_social_ties", c.scbs_social_ties);

  auto& g = c.game;
  g.min_rate_bps = r.real("min_rate_bps", g.min_rate_bps);
  g.scbs_quota = static_cast<int>(r.integer("scbs_quota", g.scbs_quota));
  g.relay_quota = static_cast<int>(r.integer("relay_quota", g.relay_quota));
  g.x_floor = r.real("x_floor", g.x_floor);
  g.enable_d2d = r.boolean("enable_d2d", g.enable_d2d);
  g.d2d_epsilon = r.real("d2d_epsilon", g.d2d_epsilon);
  if (g.relay_quota < 0) throw ConfigError("relay_quota must be non-negative");
  if (!(g.x_floor > 0)) throw ConfigError("x_floor must be positive");

  auto& e = c.engine;
  e.max_iterations = static_cast<int>(r.integer("max_iterations", e.max_iterations));
  e.schedule_start = r.real("schedule_start", e.schedule_start);
  e.schedule_end = r.real("schedule_end", e.schedule_end);
  const std::string mode = r.text("schedule_mode", "inverse");
  if (mode == "inverse") {
    e.schedule = ScheduleMode::InverseTemperature;
  } else if (mode == "literal") {
    e.schedule = ScheduleMode::LiteralTemperature;
  } else {
    throw ConfigError("schedule_mode must be inverse or literal");
  }
  e.early_stop_window = static_cast<int>(r.integer("early_stop_window", e.early_stop_window));
  e.pair_swap_fraction = r.real("pair_swap_fraction", e.pair_swap_fraction);
  e.validate();
  c.stabilize = r.boolean("stabilize", c.stabilize);

  const std::string variable = r.text("sweep_variable", "");
  const std::string values = r.text("sweep_values", "");
  if (!variable.empty() || !values.empty()) {
    if (variable != "N" && variable != "M") throw ConfigError("sweep_variable must be N or M");
    SweepSpec sweep{variable[0], {}};
    for (const auto& item : split(values, ',')) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || v < 1) {
        throw ConfigError("sweep_values must be positive integers, got '" + item + "'");
      }
      sweep.values.push_back(v);
    }
    if (sweep.values.empty()) throw ConfigError("sweep_values is empty");
    for (std::size_t i = 1; i < sweep.values.size(); ++i) {
      if (sweep.values[i] <= sweep.values[i - 1]) throw ConfigError("sweep_values must be strictly increasing");
    }
    c.sweep = sweep;
  }
  c.replications = positive_int("replications", r.integer("replications", c.replications));
  c.methods.clear();
  for (const auto& name : split(r.text("methods", "social,max_rssi"), ',')) {
    if (name == "social") {
      c.methods.push_back(Method::SocialAware);
    } else if (name == "max_rssi") {
      c.methods.push_back(Method::MaxRssi);
    } else {
      throw ConfigError("unknown method '" + name + "'");
    }
  }
  if (auto v = kv.get("methods"); v && split(*v, ',').empty()) throw ConfigError("methods list is empty");
  c.threads = static_cast<int>(r.integer("threads", c.threads));
  if (c.threads < 0) throw ConfigError("threads must be non-negative");
  return c;
}

}  // namespace socassoc

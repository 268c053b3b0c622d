#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace socassoc {

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw);
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear);

enum class ScbsPathlossModel {
  ThreeGppPico,  ///< intercept + slope * log10(d / 1 km)
  PowerLaw,      ///< same exponent law as device-to-device links
};

struct PathlossParams {
  double d2d_alpha = 3.0;
  ScbsPathlossModel scbs_model = ScbsPathlossModel::ThreeGppPico;
  double scbs_intercept_db = 140.7;
  double scbs_slope_db = 36.7;
  double min_distance_m = 1.0;
};

/// Deployment defaults follow the reference small cell evaluation setup.
struct RadioParams {
  double system_bandwidth_hz = 5e6;
  double macro_radius_m = 500.0;
  double noise_psd_dbm_hz = -174.0;
  double scbs_radius_m = 50.0;
  double scbs_power_dbm = 23.0;
  double d2d_radius_m = 20.0;
  double ue_power_dbm = 15.0;
  int subcarriers = 16;
  PathlossParams pathloss;
  /// Whether relaying users count as co-channel interferers.
  bool d2d_interference = true;
  /// Multiplicative small-scale gain applied to every link (1 = pathloss only).
  double gain_factor = 1.0;
};

enum class TxKind { Scbs, Ue };

struct Transmitter {
  TxKind kind = TxKind::Scbs;
  int index = 0;
  bool operator==(const Transmitter&) const = default;
};

/// Pathloss in dB at `distance_m` (floored at min_distance_m).
double pathloss_db(TxKind tx_kind, double distance_m, const PathlossParams& params);

/// Immutable physical layout: node positions plus per-node subcarrier offsets.
struct RadioScenario {
  RadioParams params;
  std::vector<Position> scbs;
  std::vector<Position> ues;
  std::vector<int> scbs_subcarrier_offset;
  std::vector<int> ue_subcarrier_offset;

  int scbs_count() const { return static_cast<int>(scbs.size()); }
  int ue_count() const { return static_cast<int>(ues.size()); }

  Position position(Transmitter tx) const;
  double tx_power_mw(Transmitter tx) const;
  double service_radius(TxKind kind) const;
  double distance_to_ue(Transmitter tx, int ue) const;
  bool in_range(Transmitter tx, int ue) const;
  /// Linear channel gain from tx to the user (pathloss and gain factor).
  double channel_gain(Transmitter tx, int ue) const;
  double received_power_mw(Transmitter tx, int ue) const;

  /// Throws ConfigError if any structural invariant is broken.
  void validate() const;
};

/// Places SCBSs and users i.i.d. uniformly on the macro disk.
RadioScenario generate_topology(int n_scbs, int n_ues, const RadioParams& params, std::uint64_t seed);

/// Scenario with fixed positions; subcarrier offsets are drawn from `seed`.
RadioScenario make_scenario(const RadioParams& params, std::vector<Position> scbs, std::vector<Position> ues,
                            std::uint64_t seed);

struct LinkBudget {
  Transmitter tx;
  int rx = 0;
  int subcarrier = 0;
  double gain = 0.0;
  double received_mw = 0.0;
  double interference_mw = 0.0;
  double noise_mw = 0.0;
  double sinr = 0.0;
  double rate_bps = 0.0;
};

double shannon_rate(double bandwidth_hz, double sinr);

/// Downlink budget of tx -> rx on `subcarrier` with a `share` of the
/// system bandwidth. Every other transmitter in `cochannel` interferes
/// (relaying users only when d2d_interference is set). Throws RangeError
/// when rx lies outside the transmitter's service radius.
LinkBudget link_rate(Transmitter tx, int rx, int subcarrier, const RadioScenario& scenario,
                     std::span<const Transmitter> cochannel, double share);

}  // namespace socassoc

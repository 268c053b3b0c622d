#include "socassoc/radio.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "socassoc/errors.hpp"

namespace socassoc {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double pathloss_db(TxKind tx_kind, double distance_m, const PathlossParams& params) {
  const double d = std::max(distance_m, params.min_distance_m);
  if (tx_kind == TxKind::Scbs && params.scbs_model == ScbsPathlossModel::ThreeGppPico) {
    return params.scbs_intercept_db + params.scbs_slope_db * std::log10(d / 1000.0);
  }
  return 10.0 * params.d2d_alpha * std::log10(d);
}

Position RadioScenario::position(Transmitter tx) const {
  return tx.kind == TxKind::Scbs ? scbs.at(static_cast<std::size_t>(tx.index))
                                 : ues.at(static_cast<std::size_t>(tx.index));
}

double RadioScenario::tx_power_mw(Transmitter tx) const {
  return dbm_to_mw(tx.kind == TxKind::Scbs ? params.scbs_power_dbm : params.ue_power_dbm);
}

double RadioScenario::service_radius(TxKind kind) const {
  return kind == TxKind::Scbs ? params.scbs_radius_m : params.d2d_radius_m;
}

double RadioScenario::distance_to_ue(Transmitter tx, int ue) const {
  return distance(position(tx), ues.at(static_cast<std::size_t>(ue)));
}

bool RadioScenario::in_range(Transmitter tx, int ue) const {
  return distance_to_ue(tx, ue) <= service_radius(tx.kind);
}

double RadioScenario::channel_gain(Transmitter tx, int ue) const {
  return params.gain_factor / db_to_linear(pathloss_db(tx.kind, distance_to_ue(tx, ue), params.pathloss));
}

double RadioScenario::received_power_mw(Transmitter tx, int ue) const {
  return tx_power_mw(tx) * channel_gain(tx, ue);
}

void RadioScenario::validate() const {
  const auto& p = params;
  if (scbs.empty() || ues.empty()) throw ConfigError("scenario needs at least one SCBS and one UE");
  if (!(p.system_bandwidth_hz > 0 && p.macro_radius_m > 0 && p.scbs_radius_m > 0 && p.d2d_radius_m > 0)) {
    throw ConfigError("bandwidth and radii must be positive");
  }
  if (p.subcarriers < 1) throw ConfigError("subcarrier count must be at least 1");
  if (!(p.pathloss.min_distance_m > 0)) throw ConfigError("pathloss distance floor must be positive");
  if (!(p.gain_factor > 0)) throw ConfigError("gain factor must be positive");
  if (scbs_subcarrier_offset.size() != scbs.size() || ue_subcarrier_offset.size() != ues.size()) {
    throw ConfigError("subcarrier offsets do not match node counts");
  }
  const double limit = p.macro_radius_m * (1.0 + 1e-12);
  for (const auto& points : {std::cref(scbs), std::cref(ues)}) {
    for (const auto& pos : points.get()) {
      if (std::hypot(pos.x, pos.y) > limit) throw ConfigError("node position outside the macro cell");
    }
  }
}

namespace {

std::vector<int> draw_offsets(std::size_t count, int subcarriers, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, subcarriers - 1);
  std::vector<int> out(count);
  for (auto& o : out) o = pick(rng);
  return out;
}

}  // namespace

RadioScenario make_scenario(const RadioParams& params, std::vector<Position> scbs, std::vector<Position> ues,
                            std::uint64_t seed) {
  if (params.subcarriers < 1) throw ConfigError("subcarrier count must be at least 1");
  RadioScenario out{params, std::move(scbs), std::move(ues), {}, {}};
  std::mt19937_64 rng(seed);
  out.scbs_subcarrier_offset = draw_offsets(out.scbs.size(), params.subcarriers, rng);
  out.ue_subcarrier_offset = draw_offsets(out.ues.size(), params.subcarriers, rng);
  out.validate();
  return out;
}

RadioScenario generate_topology(int n_scbs, int n_ues, const RadioParams& params, std::uint64_t seed) {
  if (n_scbs < 1 || n_ues < 1) throw ConfigError("need at least one SCBS and one UE");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    const double r = params.macro_radius_m * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return Position{r * std::cos(theta), r * std::sin(theta)};
  };
  std::vector<Position> scbs(static_cast<std::size_t>(n_scbs));
  std::vector<Position> ues(static_cast<std::size_t>(n_ues));
  for (auto& p : scbs) p = draw();
  for (auto& p : ues) p = draw();
  return make_scenario(params, std::move(scbs), std::move(ues), rng());
}

double shannon_rate(double bandwidth_hz, double sinr) { return bandwidth_hz * std::log2(1.0 + sinr); }

LinkBudget link_rate(Transmitter tx, int rx, int subcarrier, const RadioScenario& scenario,
                     std::span<const Transmitter> cochannel, double share) {
  if (!(share > 0.0 && share <= 1.0)) throw ConfigError("bandwidth share must lie in (0,1]");
  if (!scenario.in_range(tx, rx)) {
    throw RangeError("UE M" + std::to_string(rx + 1) + " is outside the service radius of its transmitter");
  }
  LinkBudget out;
  out.tx = tx;
  out.rx = rx;
  out.subcarrier = subcarrier;
  out.gain = scenario.channel_gain(tx, rx);
  out.received_mw = scenario.tx_power_mw(tx) * out.gain;
  for (const Transmitter& other : cochannel) {
    if (other == tx) continue;
    if (other.kind == TxKind::Ue && (!scenario.params.d2d_interference || other.index == rx)) continue;
    out.interference_mw += scenario.received_power_mw(other, rx);
  }
  const double bandwidth = share * scenario.params.system_bandwidth_hz;
  out.noise_mw = dbm_to_mw(scenario.params.noise_psd_dbm_hz) * bandwidth;
  out.sinr = out.received_mw / (out.noise_mw + out.interference_mw);
  out.rate_bps = shannon_rate(bandwidth, out.sinr);
  return out;
}

}  // namespace socassoc

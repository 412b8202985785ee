#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ugvbc/types.hpp"

namespace ugvbc {

// All physical and optimization parameters of a scenario. Units follow the
// config-file documentation: areas m^2, distances m, powers W, energies J,
// times in sub-slots, rates bps/Hz, tolerance dB.
struct ScenarioConfig {
  double coverage_area = 500.0;        // S
  double tag_density = 0.8;            // lambda, tags/m^2
  double ap_height = 25.0;             // d_AP
  double pathloss_exponent = 2.8;      // alpha, must exceed 2
  double pathloss_tolerance = 0.4;     // Theta, dB
  double reflection = 0.8;             // eta in [0,1]
  double rate_min = 1.0;               // R_min
  double ugv_speed = 2.0;              // nu, m per sub-slot
  double mobility_mu1 = 0.29;          // W
  double mobility_mu2 = 7.4;           // W per (m/sub-slot)
  double circuit_power_reader = 0.2;   // P_in
  double circuit_power_ap = 0.5;       // P_AP
  double reader_power_max = 1.0;       // p_max (30 dBm)
  double ap_power_max = 10.0;          // P_max (40 dBm)
  double ugv_energy_max = 1.0e4;       // E_max
  double time_max = 5.0e3;             // T_max, sub-slots
  int antennas = 8;                    // L
  int tx_antennas = 4;                 // L_T (used in FD mode)
  int rx_antennas = 4;                 // L_R (used in FD mode)
  double noise_reader = 1.0e-5;        // sigma_m^2 (-20 dBm)
  double noise_ap = 1.0e-5;            // sigma^2
  double sub_slot_duration = 1.0;      // seconds per sub-slot

  bool operator==(const ScenarioConfig&) const = default;
};

// Returns the list of violated invariants; empty means the config is valid.
// The antenna-partition constraint L_T + L_R = L only binds in FD mode, so it
// is checked when a mode is supplied.
std::vector<std::string> validate(const ScenarioConfig& config);
std::vector<std::string> validate(const ScenarioConfig& config, Mode mode);

// Flat key-value parser for the scenario file format ("key = value", '#'
// comments). Unknown or duplicate keys are errors. noise_ap, sub_slot_duration
// and the FD antenna split may be omitted and take their documented defaults.
Result<ScenarioConfig> parse_config(std::istream& in);
Result<ScenarioConfig> load_config(const std::string& path);

// Writes in the same flat format; parse(serialize(c)) == c field by field.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace ugvbc

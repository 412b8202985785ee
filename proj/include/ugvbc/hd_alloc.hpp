#pragma once

#include "ugvbc/channel.hpp"
#include "ugvbc/config.hpp"
#include "ugvbc/planner.hpp"
#include "ugvbc/types.hpp"

namespace ugvbc {

// Per-tag downlink and per-cell uplink SNR targets for the half-duplex rate
// constraint. a[m][i] = d_m^alpha sigma_m^2 (4^Rmin - 1) / (eta |g|^2),
// b[m] = d_m^alpha sigma^2 (4^Rmin - 1). a is +inf (flagged) when g == 0.
struct HdThresholds {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<uint8_t>> zero_channel;  // g == 0 draws
};

HdThresholds hd_thresholds(const HexPlan& plan, const ChannelSet& channels,
                           const ScenarioConfig& config);

// Minimum-norm beamformer hitting |f^H w|^2 == a. Empty when the condition
// ||f|| >= sqrt(a / p_cap) fails (tag cannot be served within the power cap).
std::optional<CVector> tx_beamform_hd(const CVector& f, double a, double p_cap);

// Maximal ratio combining, v = h / ||h||.
CVector rx_beamform_hd(const CVector& h);

// Reader powers p_m = b_m / ||h_m||^2 with the per-cell cap and the shared
// budget check. Violations are flagged per cell / globally, not thrown.
struct ReaderPowerResult {
  Eigen::VectorXd p;                    // W, 0 for capped cells
  std::vector<uint8_t> cap_exceeded;    // first condition per cell
  bool budget_exceeded = false;         // I * sum p over active cells > C
};
ReaderPowerResult reader_power_hd(const std::vector<double>& b,
                                  const std::vector<CVector>& h, double p_max,
                                  double budget, double tags_per_cell);

// Achievable rate min{downlink, uplink} with the 1/2 dual-hop pre-log.
double hd_rate(const CVector& w, const CVector& v, double p,
               const ChannelSet& channels, const HexPlan& plan,
               const ScenarioConfig& config, long cell, long tag);

struct AllocationOutcome {
  Allocation allocation;
  EnergyReport energy;
};

// Closed-form HD pipeline: thresholds, MRT beamformers, MRC combiners,
// reader powers, rates and the energy ledger. Infeasible tags/cells are
// skipped and excluded from the energy sums.
Result<AllocationOutcome> allocate_hd(const HexPlan& plan,
                                      const ChannelSet& channels,
                                      const ScenarioConfig& config);

// Shared energy accounting (Sum ||w||^2, I Sum p, motion and circuit terms),
// also used by the FD allocators.
EnergyReport energy_report(const HexPlan& plan, const ScenarioConfig& config,
                           const Allocation& alloc,
                           std::vector<std::vector<double>> rates);

}  // namespace ugvbc

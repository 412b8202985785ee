#pragma once

#include "ugvbc/channel.hpp"
#include "ugvbc/config.hpp"
#include "ugvbc/convex.hpp"
#include "ugvbc/hd_alloc.hpp"
#include "ugvbc/planner.hpp"
#include "ugvbc/types.hpp"

namespace ugvbc {

// FD counterparts of the HD thresholds (single-hop pre-log, so 2^Rmin - 1):
// a[m][i] = sigma_m^2 d_m^alpha (2^Rmin - 1) / (eta |g|^2),
// b[m] = d_m^alpha (2^Rmin - 1).
struct FdThresholds {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<uint8_t>> zero_channel;
};

FdThresholds fd_thresholds(const HexPlan& plan, const ChannelSet& channels,
                           const ScenarioConfig& config);

// Interference-aware combiner v = (Q w w^H Q^H + sigma^2 I)^-1 h, normalized;
// maximizes the generalized Rayleigh quotient |v^H h|^2/(|v^H Q w|^2+sigma^2).
CVector rx_beamform_fd(const CVector& h, const CMatrix& q_si, const CVector& w,
                       double noise_ap);

// Self-interference power constraint in its two algebraically equivalent
// forms. Post-elimination residual (satisfied iff <= 0):
//   (sigma^2/p) b (||Qw||^2 + sigma^2) + |h^H Q w|^2
//     - ||h||^2 ||Qw||^2 - sigma^2 ||h||^2.
double si_constraint_residual(double p, const CVector& w, const CVector& h,
                              const CMatrix& q_si, double b, double noise_ap);
// Pre-elimination residual p * h^H (Q w w^H Q^H + sigma^2 I)^-1 h - b,
// evaluated through an actual matrix solve (satisfied iff >= 0). Kept as an
// independent route for cross-checking the elimination identity.
double si_constraint_residual_pre(double p, const CVector& w, const CVector& h,
                                  const CMatrix& q_si, double b,
                                  double noise_ap);

// Smallest per-tag reader power satisfying the SI constraint at the given w
// (the per-cell power is the max of this over the cell's tags).
double min_reader_power_fd(const CVector& w, const CVector& h,
                           const CMatrix& q_si, double b, double noise_ap);

// First-order surrogate constraints around w_prev for one tag: the linear
// under-estimator of the downlink target and the convexified SI row.
struct LinearizedTag {
  convex::LinearConstraint downlink;  // tangent of |f^H w|^2 >= a
  convex::MixedConstraint si;         // convex surrogate of the SI row
};
LinearizedTag linearized_constraints(const CVector& w_prev, const CVector& f,
                                     double a, const CVector& h,
                                     const CMatrix& q_si, double b,
                                     double noise_ap);

struct FdOptions {
  double sca_tolerance = 1e-6;  // relative objective change
  int sca_max_iterations = 100;
  double p_floor = 1e-9;  // W, keeps the 1/p terms smooth
  convex::Options solver;
};

// Joint SCA optimization of all beamformers and reader powers (per-trial
// problem with the shared transmit-energy budget).
Result<AllocationOutcome> jo_sca(const HexPlan& plan, const ChannelSet& channels,
                                 const ScenarioConfig& config,
                                 const FdOptions& opts = {});

// Equal reader power p = min{C/(I M), p_max}, then per-tag SCA on w alone.
Result<AllocationOutcome> so_epa(const HexPlan& plan, const ChannelSet& channels,
                                 const ScenarioConfig& config,
                                 const FdOptions& opts = {});

// Fixed MRT-style transmit beamforming, optimal combiner, closed-form powers.
Result<AllocationOutcome> so_fb(const HexPlan& plan, const ChannelSet& channels,
                                const ScenarioConfig& config);

// Benchmarks: MRT transmit beamforming with MRC (mrc-mrt) or the
// interference-aware (rzf) combiner; powers at the smallest feasible value.
Result<AllocationOutcome> baseline_mrc_mrt(const HexPlan& plan,
                                           const ChannelSet& channels,
                                           const ScenarioConfig& config);
Result<AllocationOutcome> baseline_rzf(const HexPlan& plan,
                                       const ChannelSet& channels,
                                       const ScenarioConfig& config);

// Achievable FD rate (no dual-hop pre-log; uplink is an SINR).
double fd_rate(const CVector& w, const CVector& v, double p,
               const ChannelSet& channels, const HexPlan& plan,
               const ScenarioConfig& config, long cell, long tag);

// Dispatch by selector string: jo-sca | so-epa | so-fb | mrc-mrt | rzf.
Result<AllocationOutcome> allocate_fd(const std::string& algorithm,
                                      const HexPlan& plan,
                                      const ChannelSet& channels,
                                      const ScenarioConfig& config,
                                      const FdOptions& opts = {});

}  // namespace ugvbc

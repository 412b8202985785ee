#include "ugvbc/hd_alloc.hpp"

#include <cmath>
#include <limits>

namespace ugvbc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

HdThresholds hd_thresholds(const HexPlan& plan, const ChannelSet& channels,
                           const ScenarioConfig& config) {
  const double gap = std::pow(4.0, config.rate_min) - 1.0;
  HdThresholds th;
  th.a.resize(plan.cells);
  th.b.resize(plan.cells);
  th.zero_channel.resize(plan.cells);
  for (long m = 0; m < plan.cells; ++m) {
    const double dpow = std::pow(plan.cell_distance[m], config.pathloss_exponent);
    th.b[m] = dpow * config.noise_ap * gap;
    th.a[m].resize(plan.tags_per_cell_int);
    th.zero_channel[m].assign(plan.tags_per_cell_int, 0);
    for (int i = 0; i < plan.tags_per_cell_int; ++i) {
      const double g2 = std::norm(channels.g[m][i]);
      const double denom = config.reflection * g2;
      if (denom > 0.0) {
        th.a[m][i] = dpow * config.noise_reader * gap / denom;
      } else {
        th.a[m][i] = kInf;
        th.zero_channel[m][i] = 1;
      }
    }
  }
  return th;
}

std::optional<CVector> tx_beamform_hd(const CVector& f, double a, double p_cap) {
  const double f2 = f.squaredNorm();
  if (!(a >= 0.0) || f2 * p_cap < a || (f2 == 0.0 && a > 0.0))
    return std::nullopt;
  if (f2 == 0.0) return CVector::Zero(f.size());
  return CVector(std::sqrt(a) / f2 * f);
}

CVector rx_beamform_hd(const CVector& h) { return h / h.norm(); }

ReaderPowerResult reader_power_hd(const std::vector<double>& b,
                                  const std::vector<CVector>& h, double p_max,
                                  double budget, double tags_per_cell) {
  const long cells = static_cast<long>(b.size());
  ReaderPowerResult res;
  res.p = Eigen::VectorXd::Zero(cells);
  res.cap_exceeded.assign(cells, 0);
  double sum = 0.0;
  for (long m = 0; m < cells; ++m) {
    const double h2 = h[m].squaredNorm();
    const double p = h2 > 0.0 ? b[m] / h2 : kInf;
    if (p > p_max) {
      res.cap_exceeded[m] = 1;  // reader suspends in this cell
      continue;
    }
    res.p[m] = p;
    sum += p;
  }
  res.budget_exceeded = tags_per_cell * sum > budget;
  return res;
}

double hd_rate(const CVector& w, const CVector& v, double p,
               const ChannelSet& channels, const HexPlan& plan,
               const ScenarioConfig& config, long cell, long tag) {
  const double dpow =
      std::pow(plan.cell_distance[cell], config.pathloss_exponent);
  const double g2 = std::norm(channels.g[cell][tag]);
  const cdouble fw = channels.f[cell][tag].dot(w);  // f^H w
  const double down =
      config.reflection * g2 * std::norm(fw) / (config.noise_reader * dpow);
  const cdouble vh = v.dot(channels.h[cell]);  // v^H h
  const double up = p * std::norm(vh) / (config.noise_ap * dpow);
  return 0.5 * std::min(std::log2(1.0 + down), std::log2(1.0 + up));
}

EnergyReport energy_report(const HexPlan& plan, const ScenarioConfig& config,
                           const Allocation& alloc,
                           std::vector<std::vector<double>> rates) {
  const double dt = config.sub_slot_duration;
  EnergyReport e;
  e.ugv_motion = (config.mobility_mu1 + config.mobility_mu2 * config.ugv_speed) *
                 plan.motion_time * dt;
  e.reader_tx = plan.tags_per_cell * alloc.p.sum() * dt;
  e.reader_circuit = plan.block_length * config.circuit_power_reader * dt;
  double wsum = 0.0;
  for (std::size_t m = 0; m < alloc.w.size(); ++m)
    for (std::size_t i = 0; i < alloc.w[m].size(); ++i)
      if (!alloc.skipped[m][i]) wsum += alloc.w[m][i].squaredNorm();
  e.ap_tx = wsum * dt;
  e.ap_circuit = plan.block_length * config.circuit_power_ap * dt;
  e.total = e.ugv_motion + e.reader_tx + e.reader_circuit + e.ap_tx + e.ap_circuit;
  e.rates = std::move(rates);
  return e;
}

Result<AllocationOutcome> allocate_hd(const HexPlan& plan,
                                      const ChannelSet& channels,
                                      const ScenarioConfig& config) {
  const long cells = plan.cells;
  const int tags = plan.tags_per_cell_int;

  Allocation alloc;
  alloc.mode = Mode::hd;
  alloc.algorithm = "closed-form";
  alloc.w.assign(cells, std::vector<CVector>(tags));
  alloc.v_cell.resize(cells);
  alloc.skipped.assign(cells, std::vector<uint8_t>(tags, 0));
  alloc.cell_skipped.assign(cells, 0);
  alloc.cell_flag.assign(cells, "");

  const HdThresholds th = hd_thresholds(plan, channels, config);

  for (long m = 0; m < cells; ++m) {
    for (int i = 0; i < tags; ++i) {
      auto w = tx_beamform_hd(channels.f[m][i], th.a[m][i], config.ap_power_max);
      if (w) {
        alloc.w[m][i] = std::move(*w);
      } else {
        alloc.skipped[m][i] = 1;  // tag not allowed to transmit
      }
    }
  }

  std::vector<double> b(cells);
  for (long m = 0; m < cells; ++m) {
    b[m] = th.b[m];
    const double h2 = channels.h[m].squaredNorm();
    if (h2 > 0.0) {
      alloc.v_cell[m] = rx_beamform_hd(channels.h[m]);
    } else {
      alloc.v_cell[m] = CVector::Zero(channels.h[m].size());
      alloc.cell_skipped[m] = 1;
      alloc.cell_flag[m] = "zero-channel";
    }
  }
  ReaderPowerResult rp = reader_power_hd(b, channels.h, config.reader_power_max,
                                         plan.tx_energy_budget,
                                         plan.tags_per_cell);
  alloc.p = rp.p;
  for (long m = 0; m < cells; ++m) {
    if (rp.cap_exceeded[m] && !alloc.cell_skipped[m]) {
      alloc.cell_skipped[m] = 1;
      alloc.cell_flag[m] = "cap-exceeded";
    }
    if (alloc.cell_skipped[m]) {
      alloc.p[m] = 0.0;
      for (int i = 0; i < tags; ++i) alloc.skipped[m][i] = 1;
    }
  }
  alloc.budget_exceeded = rp.budget_exceeded;

  std::vector<std::vector<double>> rates(cells, std::vector<double>(tags, 0.0));
  double objective = 0.0;
  for (long m = 0; m < cells; ++m) {
    if (!alloc.cell_skipped[m]) objective += plan.tags_per_cell * alloc.p[m];
    for (int i = 0; i < tags; ++i) {
      if (alloc.skipped[m][i]) continue;
      objective += alloc.w[m][i].squaredNorm();
      rates[m][i] = hd_rate(alloc.w[m][i], alloc.v_cell[m], alloc.p[m], channels,
                            plan, config, m, i);
    }
  }
  alloc.objective = objective;

  AllocationOutcome out;
  out.energy = energy_report(plan, config, alloc, std::move(rates));
  out.allocation = std::move(alloc);
  return Result<AllocationOutcome>::success(std::move(out));
}

}  // namespace ugvbc

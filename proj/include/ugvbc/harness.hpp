#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ugvbc/fd_alloc.hpp"
#include "ugvbc/hd_alloc.hpp"

namespace ugvbc {

struct TrialResult {
  bool ok = false;
  std::string error;
  EnergyReport energy;
  double feasible_fraction = 1.0;  // served tags / simulated tags
  int sca_iterations = 0;
  double objective = 0.0;  // transmit-side objective
};

// One full pipeline execution (channels -> allocation -> energies) for a
// fixed plan. Deterministic per (config, seed, trial).
TrialResult run_trial(const ScenarioConfig& config, const HexPlan& plan,
                      uint64_t seed, uint64_t trial, Mode mode,
                      const std::string& algorithm);

struct SweepSpec {
  std::string param;            // config key, e.g. "antennas", "coverage_area"
  std::vector<double> values;
};

struct RunSpec {
  std::string experiment_id = "exp";
  uint64_t seed = 1;
  int trials = 800;
  int jobs = 0;  // 0 => hardware concurrency
  Mode mode = Mode::fd;
  std::vector<std::string> algorithms;  // paired seeds across algorithms
  std::vector<SweepSpec> sweeps;        // zero, one or two swept parameters
  std::string channel_dump_path;        // optional, first trial of first point
};

// One aggregated row of the results table (means over trials).
struct ExperimentRow {
  std::string experiment_id;
  std::string sweep_param;  // "param1[,param2]" or "-"
  std::string sweep_value;  // matching values or "-"
  Mode mode = Mode::fd;
  std::string algorithm;
  int antennas = 0;
  int trials = 0;
  bool plan_ok = false;
  std::string plan_error;
  int k_star = 0;
  double r_star = 0.0;
  long cells = 0;
  double tags_per_cell = 0.0;
  double mean_e_ugv_motion = 0.0;
  double mean_e_reader_tx = 0.0;
  double mean_e_ap_tx = 0.0;
  double mean_e_circuit = 0.0;
  double mean_e_total = 0.0;
  double std_e_total = 0.0;
  double feasible_fraction = 0.0;
  double mean_sca_iterations = 0.0;
  std::vector<double> per_trial_total;  // paired-seed series for comparisons
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
};

// Runs trials for every (sweep point x algorithm), aggregating with a
// deterministic reduction so results are independent of worker count.
// Per-point failures are recorded in the row; the batch continues.
Result<ExperimentTable> run_experiment(const ScenarioConfig& config,
                                       const RunSpec& spec);

// Results CSV, exact column order:
// experiment_id,sweep_param,sweep_value,mode,algorithm,L,trials,K_star,r_star,
// M,I,mean_e_ugv_motion,mean_e_reader_tx,mean_e_ap_tx,mean_e_circuit,
// mean_e_total,std_e_total,feasible_fraction,mean_sca_iterations
std::string experiment_csv(const ExperimentTable& table);

// Applies a sweep value to its config field; false for unknown keys.
bool apply_param(ScenarioConfig& config, const std::string& key, double value);

// Paired bootstrap estimate of Pr[mean(a) <= mean(b)] over per-trial pairs.
double bootstrap_confidence_leq(const std::vector<double>& a,
                                const std::vector<double>& b,
                                int resamples = 2000, uint64_t seed = 99);

}  // namespace ugvbc

#include "ugvbc.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ugvbc/channel.hpp"
#include "ugvbc/config.hpp"
#include "ugvbc/harness.hpp"
#include "ugvbc/planner.hpp"
#include "ugvbc/selftest.hpp"

namespace {

thread_local std::string g_last_error;

ugvbc_status fail(ugvbc_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

ugvbc_status ok() {
  g_last_error.clear();
  return UGVBC_OK;
}

// Planner error codes that mean "infeasible", as opposed to bad input.
bool infeasible_code(const std::string& e) {
  return e.rfind("no-feasible-K", 0) == 0 || e.rfind("negative-budget", 0) == 0 ||
         e.rfind("infeasible-energy", 0) == 0 || e.rfind("infeasible-time", 0) == 0;
}

std::vector<double> parse_values(const std::string& csv, bool* ok_flag) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  *ok_flag = true;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      *ok_flag = false;
      return {};
    }
  }
  if (values.empty()) *ok_flag = false;
  return values;
}

}  // namespace

struct ugvbc_config {
  ugvbc::ScenarioConfig cfg;
};

struct ugvbc_plan {
  ugvbc::HexPlan plan;
  std::string description;
};

struct ugvbc_run {
  ugvbc::RunSpec spec;
};

extern "C" {

const char* ugvbc_version(void) { return "1.0.0"; }

const char* ugvbc_last_error(void) { return g_last_error.c_str(); }

ugvbc_status ugvbc_config_load(const char* path, ugvbc_config** out) {
  if (!path || !out) return fail(UGVBC_ERR_VALIDATION, "null argument");
  auto parsed = ugvbc::load_config(path);
  if (!parsed.ok()) {
    return fail(parsed.error.rfind("io-error", 0) == 0 ? UGVBC_ERR_RUNTIME
                                                       : UGVBC_ERR_VALIDATION,
                parsed.error);
  }
  *out = new ugvbc_config{*parsed};
  return ok();
}

ugvbc_status ugvbc_config_parse(const char* text, ugvbc_config** out) {
  if (!text || !out) return fail(UGVBC_ERR_VALIDATION, "null argument");
  std::istringstream in(text);
  auto parsed = ugvbc::parse_config(in);
  if (!parsed.ok()) return fail(UGVBC_ERR_VALIDATION, parsed.error);
  *out = new ugvbc_config{*parsed};
  return ok();
}

void ugvbc_config_free(ugvbc_config* config) { delete config; }

ugvbc_status ugvbc_config_set(ugvbc_config* config, const char* key,
                              double value) {
  if (!config || !key) return fail(UGVBC_ERR_VALIDATION, "null argument");
  ugvbc::ScenarioConfig next = config->cfg;
  if (!ugvbc::apply_param(next, key, value))
    return fail(UGVBC_ERR_VALIDATION, std::string("unknown-key: ") + key);
  auto errors = ugvbc::validate(next);
  if (!errors.empty()) return fail(UGVBC_ERR_VALIDATION, errors.front());
  config->cfg = next;
  return ok();
}

ugvbc_status ugvbc_config_get(const ugvbc_config* config, const char* key,
                              double* out) {
  if (!config || !key || !out) return fail(UGVBC_ERR_VALIDATION, "null argument");
  const auto& c = config->cfg;
  const std::string k = key;
  if (k == "coverage_area") *out = c.coverage_area;
  else if (k == "tag_density") *out = c.tag_density;
  else if (k == "ap_height") *out = c.ap_height;
  else if (k == "pathloss_exponent") *out = c.pathloss_exponent;
  else if (k == "pathloss_tolerance") *out = c.pathloss_tolerance;
  else if (k == "reflection") *out = c.reflection;
  else if (k == "rate_min") *out = c.rate_min;
  else if (k == "ugv_speed") *out = c.ugv_speed;
  else if (k == "antennas") *out = c.antennas;
  else if (k == "reader_power_max") *out = c.reader_power_max;
  else if (k == "ap_power_max") *out = c.ap_power_max;
  else if (k == "ugv_energy_max") *out = c.ugv_energy_max;
  else if (k == "time_max") *out = c.time_max;
  else if (k == "noise_reader") *out = c.noise_reader;
  else if (k == "noise_ap") *out = c.noise_ap;
  else return fail(UGVBC_ERR_VALIDATION, std::string("unknown-key: ") + key);
  return ok();
}

ugvbc_status ugvbc_plan_compute(const ugvbc_config* config, ugvbc_plan** out) {
  if (!config || !out) return fail(UGVBC_ERR_VALIDATION, "null argument");
  auto errors = ugvbc::validate(config->cfg);
  if (!errors.empty()) return fail(UGVBC_ERR_VALIDATION, errors.front());
  auto planned = ugvbc::plan(config->cfg);
  if (!planned.ok())
    return fail(infeasible_code(planned.error) ? UGVBC_ERR_INFEASIBLE
                                               : UGVBC_ERR_VALIDATION,
                planned.error);
  auto* handle = new ugvbc_plan{*planned, {}};
  handle->description = ugvbc::describe(handle->plan);
  *out = handle;
  return ok();
}

void ugvbc_plan_free(ugvbc_plan* plan) { delete plan; }

int ugvbc_plan_layers(const ugvbc_plan* p) { return p ? p->plan.layers : 0; }
double ugvbc_plan_radius(const ugvbc_plan* p) { return p ? p->plan.radius : 0.0; }
long ugvbc_plan_cells(const ugvbc_plan* p) { return p ? p->plan.cells : 0; }
double ugvbc_plan_tags_per_cell(const ugvbc_plan* p) {
  return p ? p->plan.tags_per_cell : 0.0;
}
int ugvbc_plan_tags_per_cell_int(const ugvbc_plan* p) {
  return p ? p->plan.tags_per_cell_int : 0;
}
double ugvbc_plan_motion_time(const ugvbc_plan* p) {
  return p ? p->plan.motion_time : 0.0;
}
double ugvbc_plan_block_length(const ugvbc_plan* p) {
  return p ? p->plan.block_length : 0.0;
}
double ugvbc_plan_tx_energy_budget(const ugvbc_plan* p) {
  return p ? p->plan.tx_energy_budget : 0.0;
}
int ugvbc_plan_cell_layer(const ugvbc_plan* p, long cell) {
  if (!p || cell < 1 || cell > p->plan.cells) return 0;
  return p->plan.cell_layer[cell - 1];
}
double ugvbc_plan_cell_distance(const ugvbc_plan* p, long cell) {
  if (!p || cell < 1 || cell > p->plan.cells) return 0.0;
  return p->plan.cell_distance[cell - 1];
}
const char* ugvbc_plan_describe(const ugvbc_plan* p) {
  return p ? p->description.c_str() : "";
}

ugvbc_status ugvbc_plan_trajectory_csv(const ugvbc_plan* p, const char* path) {
  if (!p || !path) return fail(UGVBC_ERR_VALIDATION, "null argument");
  std::ofstream out(path);
  if (!out) return fail(UGVBC_ERR_RUNTIME, std::string("cannot open ") + path);
  out << ugvbc::trajectory_csv(p->plan);
  return ok();
}

ugvbc_status ugvbc_oracle_check(const ugvbc_config* config, int* closed_form,
                                int* oracle) {
  if (!config || !closed_form || !oracle)
    return fail(UGVBC_ERR_VALIDATION, "null argument");
  auto cf = ugvbc::optimal_layers(config->cfg);
  auto bf = ugvbc::brute_force_layers(config->cfg);
  if (!cf.ok()) return fail(UGVBC_ERR_INFEASIBLE, cf.error);
  if (!bf.ok()) return fail(UGVBC_ERR_INFEASIBLE, bf.error);
  *closed_form = *cf;
  *oracle = *bf;
  return ok();
}

ugvbc_status ugvbc_oracle_sweep(int draws, uint64_t seed,
                                const char* report_path, int* mismatches) {
  if (draws <= 0 || !mismatches)
    return fail(UGVBC_ERR_VALIDATION, "draws must be positive");
  std::ostringstream report;
  report << "draw,coverage_area,ap_height,pathloss_tolerance,pathloss_exponent,"
            "closed_form,oracle,match\n";
  ugvbc::ScenarioConfig base;
  int bad = 0;
  for (int d = 0; d < draws; ++d) {
    ugvbc::CounterRng rng(seed, d, 0, 0, 8);
    ugvbc::ScenarioConfig c = base;
    c.coverage_area = 100.0 + 1900.0 * rng.uniform();
    c.ap_height = 10.0 + 30.0 * rng.uniform();
    c.pathloss_tolerance = 0.2 + 0.8 * rng.uniform();
    c.pathloss_exponent = 2.2 + 1.3 * rng.uniform();
    auto cf = ugvbc::optimal_layers(c);
    auto bf = ugvbc::brute_force_layers(c);
    // Agreeing on the same infeasibility code counts as a match.
    const bool match = (cf.ok() && bf.ok() && *cf == *bf) ||
                       (!cf.ok() && !bf.ok() && cf.error == bf.error);
    if (!match) ++bad;
    report.precision(10);
    report << d << ',' << c.coverage_area << ',' << c.ap_height << ','
           << c.pathloss_tolerance << ',' << c.pathloss_exponent << ',';
    if (cf.ok()) report << *cf; else report << "error:" << cf.error;
    report << ',';
    if (bf.ok()) report << *bf; else report << "error:" << bf.error;
    report << ',' << (match ? "MATCH" : "MISMATCH") << "\n";
  }
  if (report_path && std::string(report_path) != "") {
    std::ofstream out(report_path);
    if (!out)
      return fail(UGVBC_ERR_RUNTIME, std::string("cannot open ") + report_path);
    out << report.str();
  }
  *mismatches = bad;
  return ok();
}

ugvbc_run* ugvbc_run_new(void) {
  auto* run = new ugvbc_run;
  run->spec.trials = 100;
  return run;
}

void ugvbc_run_free(ugvbc_run* run) { delete run; }

ugvbc_status ugvbc_run_set_seed(ugvbc_run* run, uint64_t seed) {
  if (!run) return fail(UGVBC_ERR_VALIDATION, "null argument");
  run->spec.seed = seed;
  return ok();
}

ugvbc_status ugvbc_run_set_trials(ugvbc_run* run, int trials) {
  if (!run || trials <= 0)
    return fail(UGVBC_ERR_VALIDATION, "trials must be positive");
  run->spec.trials = trials;
  return ok();
}

ugvbc_status ugvbc_run_set_jobs(ugvbc_run* run, int jobs) {
  if (!run || jobs < 0) return fail(UGVBC_ERR_VALIDATION, "jobs must be >= 0");
  run->spec.jobs = jobs;
  return ok();
}

ugvbc_status ugvbc_run_set_mode(ugvbc_run* run, const char* mode) {
  if (!run || !mode) return fail(UGVBC_ERR_VALIDATION, "null argument");
  const std::string m = mode;
  if (m == "hd") run->spec.mode = ugvbc::Mode::hd;
  else if (m == "fd") run->spec.mode = ugvbc::Mode::fd;
  else return fail(UGVBC_ERR_VALIDATION, "mode must be hd or fd");
  return ok();
}

ugvbc_status ugvbc_run_set_experiment_id(ugvbc_run* run, const char* id) {
  if (!run || !id) return fail(UGVBC_ERR_VALIDATION, "null argument");
  run->spec.experiment_id = id;
  return ok();
}

ugvbc_status ugvbc_run_set_algorithms(ugvbc_run* run, const char* algorithms) {
  if (!run || !algorithms) return fail(UGVBC_ERR_VALIDATION, "null argument");
  run->spec.algorithms.clear();
  std::stringstream ss(algorithms);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "jo-sca" && item != "so-epa" && item != "so-fb" &&
        item != "mrc-mrt" && item != "rzf" && item != "closed-form")
      return fail(UGVBC_ERR_VALIDATION, "unknown algorithm: " + item);
    run->spec.algorithms.push_back(item);
  }
  if (run->spec.algorithms.empty())
    return fail(UGVBC_ERR_VALIDATION, "empty algorithm list");
  return ok();
}

ugvbc_status ugvbc_run_add_sweep(ugvbc_run* run, const char* param,
                                 const char* values) {
  if (!run || !param || !values)
    return fail(UGVBC_ERR_VALIDATION, "null argument");
  if (run->spec.sweeps.size() >= 2)
    return fail(UGVBC_ERR_VALIDATION, "at most two sweeps");
  bool ok_values = false;
  auto parsed = parse_values(values, &ok_values);
  if (!ok_values)
    return fail(UGVBC_ERR_VALIDATION, std::string("bad sweep values: ") + values);
  ugvbc::ScenarioConfig probe;
  if (!ugvbc::apply_param(probe, param, parsed.front()))
    return fail(UGVBC_ERR_VALIDATION, std::string("unknown sweep param: ") + param);
  run->spec.sweeps.push_back({param, std::move(parsed)});
  return ok();
}

ugvbc_status ugvbc_run_set_channel_dump(ugvbc_run* run, const char* path) {
  if (!run || !path) return fail(UGVBC_ERR_VALIDATION, "null argument");
  run->spec.channel_dump_path = path;
  return ok();
}

ugvbc_status ugvbc_run_execute(const ugvbc_config* config, const ugvbc_run* run,
                               const char* out_path) {
  if (!config || !run || !out_path)
    return fail(UGVBC_ERR_VALIDATION, "null argument");
  auto errors = ugvbc::validate(config->cfg, run->spec.mode);
  if (!errors.empty()) return fail(UGVBC_ERR_VALIDATION, errors.front());
  for (const auto& alg : run->spec.algorithms) {
    if (run->spec.mode == ugvbc::Mode::hd && alg != "closed-form")
      return fail(UGVBC_ERR_VALIDATION,
                  "hd mode uses the closed-form allocation only");
    if (run->spec.mode == ugvbc::Mode::fd && alg == "closed-form")
      return fail(UGVBC_ERR_VALIDATION, "closed-form selects hd mode");
  }
  auto table = ugvbc::run_experiment(config->cfg, run->spec);
  if (!table.ok()) return fail(UGVBC_ERR_VALIDATION, table.error);
  // A single-point run with an infeasible plan is an infeasibility error;
  // sweeps record per-point failures in the table instead.
  if (table->rows.size() == 1 && !table->rows.front().plan_ok)
    return fail(UGVBC_ERR_INFEASIBLE, table->rows.front().plan_error);
  const std::string csv = ugvbc::experiment_csv(*table);
  if (std::string(out_path) == "-") {
    std::cout << csv;
    return ok();
  }
  std::ofstream out(out_path);
  if (!out) return fail(UGVBC_ERR_RUNTIME, std::string("cannot open ") + out_path);
  out << csv;
  return ok();
}

ugvbc_status ugvbc_selftest(int verbose) {
  auto results = ugvbc::run_selftest();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    if (verbose) {
      std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.empty() ? "" : ": ", r.detail.c_str());
    }
  }
  if (!all) return fail(UGVBC_ERR_RUNTIME, "selftest failed");
  return ok();
}

}  // extern "C"

// Command-line front end for the ugvbc shared library. Subcommands: plan,
// run, sweep, oracle-check, selftest. Exit codes: 0 ok, 2 config/validation
// error, 3 infeasible plan, 4 runtime failure.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ugvbc.h"

namespace {

int exit_code(ugvbc_status status) {
  switch (status) {
    case UGVBC_OK:
      return 0;
    case UGVBC_ERR_VALIDATION:
      return 2;
    case UGVBC_ERR_INFEASIBLE:
      return 3;
    default:
      return 4;
  }
}

int report(ugvbc_status status) {
  if (status != UGVBC_OK)
    std::fprintf(stderr, "error: %s\n", ugvbc_last_error());
  return exit_code(status);
}

struct ConfigHandle {
  ugvbc_config* ptr = nullptr;
  ~ConfigHandle() { ugvbc_config_free(ptr); }
};

struct PlanHandle {
  ugvbc_plan* ptr = nullptr;
  ~PlanHandle() { ugvbc_plan_free(ptr); }
};

struct RunHandle {
  ugvbc_run* ptr = ugvbc_run_new();
  ~RunHandle() { ugvbc_run_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UGV-assisted backscatter network planner and simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path = "-", mode = "fd", algorithms;
  std::string dump_path, experiment_id = "exp";
  std::vector<std::string> sweep_args;
  std::uint64_t seed = 1;
  int trials = 100, jobs = 0, random_draws = 0;

  auto* plan_cmd = app.add_subcommand("plan", "Compute the network plan");
  plan_cmd->add_option("--config", config_path, "Scenario config file")
      ->required();
  plan_cmd->add_option("--out", out_path, "Trajectory CSV path (optional)");

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Scenario config file")->required();
    cmd->add_option("--seed", seed, "Master random seed");
    cmd->add_option("--trials", trials, "Monte-Carlo trials per point");
    cmd->add_option("--jobs", jobs, "Worker threads (0 = hardware)");
    cmd->add_option("--mode", mode, "hd or fd")
        ->check(CLI::IsMember({"hd", "fd"}));
    cmd->add_option("--alg", algorithms,
                    "Comma list: jo-sca,so-epa,so-fb,mrc-mrt,rzf (fd) or "
                    "closed-form (hd)");
    cmd->add_option("--out", out_path, "Results CSV path ('-' = stdout)");
    cmd->add_option("--id", experiment_id, "Experiment id column value");
    cmd->add_option("--dump-channels", dump_path,
                    "Write the first trial's channel draw as CSV");
  };

  auto* run_cmd = app.add_subcommand("run", "Run a single experiment");
  add_run_options(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  add_run_options(sweep_cmd);
  sweep_cmd
      ->add_option("--sweep", sweep_args,
                   "PARAM=v1,v2,... (repeat for a second parameter)")
      ->required()
      ->expected(1, 2);

  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "Closed-form vs. brute-force layer count");
  oracle_cmd->add_option("--config", config_path, "Scenario config file");
  oracle_cmd->add_option("--random", random_draws,
                         "Also compare on N random configurations");
  oracle_cmd->add_option("--seed", seed, "Seed for the random sweep");
  oracle_cmd->add_option("--out", out_path,
                         "CSV report path for the random sweep");

  auto* selftest_cmd =
      app.add_subcommand("selftest", "Run the built-in invariant suite");
  (void)selftest_cmd;

  CLI11_PARSE(app, argc, argv);

  if (plan_cmd->parsed()) {
    ConfigHandle config;
    if (auto st = ugvbc_config_load(config_path.c_str(), &config.ptr))
      return report(st);
    PlanHandle plan;
    if (auto st = ugvbc_plan_compute(config.ptr, &plan.ptr)) return report(st);
    std::fputs(ugvbc_plan_describe(plan.ptr), stdout);
    if (out_path != "-") {
      if (auto st = ugvbc_plan_trajectory_csv(plan.ptr, out_path.c_str()))
        return report(st);
      std::printf("trajectory csv: %s\n", out_path.c_str());
    }
    return 0;
  }

  if (run_cmd->parsed() || sweep_cmd->parsed()) {
    ConfigHandle config;
    if (auto st = ugvbc_config_load(config_path.c_str(), &config.ptr))
      return report(st);
    RunHandle run;
    if (auto st = ugvbc_run_set_seed(run.ptr, seed)) return report(st);
    if (auto st = ugvbc_run_set_trials(run.ptr, trials)) return report(st);
    if (auto st = ugvbc_run_set_jobs(run.ptr, jobs)) return report(st);
    if (auto st = ugvbc_run_set_mode(run.ptr, mode.c_str())) return report(st);
    if (auto st = ugvbc_run_set_experiment_id(run.ptr, experiment_id.c_str()))
      return report(st);
    if (algorithms.empty()) algorithms = mode == "hd" ? "closed-form" : "jo-sca";
    if (auto st = ugvbc_run_set_algorithms(run.ptr, algorithms.c_str()))
      return report(st);
    if (!dump_path.empty())
      if (auto st = ugvbc_run_set_channel_dump(run.ptr, dump_path.c_str()))
        return report(st);
    for (const auto& arg : sweep_args) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --sweep expects PARAM=v1,v2,...\n");
        return 2;
      }
      if (auto st = ugvbc_run_add_sweep(run.ptr, arg.substr(0, eq).c_str(),
                                        arg.substr(eq + 1).c_str()))
        return report(st);
    }
    return report(ugvbc_run_execute(config.ptr, run.ptr, out_path.c_str()));
  }

  if (oracle_cmd->parsed()) {
    if (!config_path.empty()) {
      ConfigHandle config;
      if (auto st = ugvbc_config_load(config_path.c_str(), &config.ptr))
        return report(st);
      int closed = 0, oracle = 0;
      if (auto st = ugvbc_oracle_check(config.ptr, &closed, &oracle))
        return report(st);
      std::printf("closed-form K*=%d, oracle K*=%d, %s\n", closed, oracle,
                  closed == oracle ? "MATCH" : "MISMATCH");
    }
    if (random_draws > 0) {
      int mismatches = 0;
      const char* path = out_path == "-" ? nullptr : out_path.c_str();
      if (auto st = ugvbc_oracle_sweep(random_draws, seed, path, &mismatches))
        return report(st);
      std::printf("random sweep: %d/%d mismatches (%.2f%%)\n", mismatches,
                  random_draws, 100.0 * mismatches / random_draws);
    }
    if (config_path.empty() && random_draws == 0) {
      std::fprintf(stderr, "error: oracle-check needs --config or --random\n");
      return 2;
    }
    return 0;
  }

  if (selftest_cmd->parsed()) return report(ugvbc_selftest(1));
  return 0;
}

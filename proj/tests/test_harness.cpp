#include <cmath>

#include "doctest.h"
#include "ugvbc/harness.hpp"
#include "ugvbc/planner.hpp"

using namespace ugvbc;

TEST_CASE("trials are deterministic per seed") {
  ScenarioConfig c;
  auto p = plan(c);
  REQUIRE(p.ok());
  for (const char* alg : {"so-fb", "rzf"}) {
    TrialResult a = run_trial(c, *p, 7, 3, Mode::fd, alg);
    TrialResult b = run_trial(c, *p, 7, 3, Mode::fd, alg);
    REQUIRE(a.ok);
    CHECK(a.energy.total == b.energy.total);
    CHECK(a.energy.ap_tx == b.energy.ap_tx);
    CHECK(a.feasible_fraction == b.feasible_fraction);
  }
  TrialResult hd_a = run_trial(c, *p, 7, 3, Mode::hd, "closed-form");
  TrialResult hd_b = run_trial(c, *p, 7, 3, Mode::hd, "closed-form");
  REQUIRE(hd_a.ok);
  CHECK(hd_a.energy.total == hd_b.energy.total);
}

TEST_CASE("empty network trial carries only motion and circuit energy") {
  ScenarioConfig c;
  c.tag_density = 0.0;
  auto p = plan(c);
  REQUIRE(p.ok());
  TrialResult t = run_trial(c, *p, 1, 0, Mode::hd, "closed-form");
  REQUIRE(t.ok);
  CHECK(t.energy.reader_tx == 0.0);
  CHECK(t.energy.ap_tx == 0.0);
  CHECK(t.energy.ugv_motion > 0.0);
  CHECK(t.energy.total ==
        doctest::Approx(t.energy.ugv_motion + t.energy.reader_circuit +
                        t.energy.ap_circuit));
  CHECK(t.feasible_fraction == 1.0);
}

TEST_CASE("experiment aggregates are worker-count invariant") {
  ScenarioConfig c;
  RunSpec spec;
  spec.mode = Mode::fd;
  spec.algorithms = {"so-fb"};
  spec.trials = 12;
  spec.seed = 3;
  spec.jobs = 1;
  auto serial = run_experiment(c, spec);
  spec.jobs = 4;
  auto parallel = run_experiment(c, spec);
  REQUIRE(serial.ok());
  REQUIRE(parallel.ok());
  CHECK(experiment_csv(*serial) == experiment_csv(*parallel));
}

TEST_CASE("csv header matches the documented column order") {
  ExperimentTable t;
  const std::string csv = experiment_csv(t);
  CHECK(csv ==
        "experiment_id,sweep_param,sweep_value,mode,algorithm,L,trials,"
        "K_star,r_star,M,I,mean_e_ugv_motion,mean_e_reader_tx,mean_e_ap_tx,"
        "mean_e_circuit,mean_e_total,std_e_total,feasible_fraction,"
        "mean_sca_iterations\n");
}

TEST_CASE("two-parameter sweeps expand to the cartesian product") {
  ScenarioConfig c;
  RunSpec spec;
  spec.mode = Mode::hd;
  spec.algorithms = {"closed-form"};
  spec.trials = 2;
  spec.sweeps = {{"pathloss_tolerance", {0.4, 0.8}},
                 {"antennas", {4.0, 8.0, 16.0}}};
  auto table = run_experiment(c, spec);
  REQUIRE(table.ok());
  CHECK(table->rows.size() == 6);
  CHECK(table->rows.front().sweep_param == "pathloss_tolerance,antennas");
  // The antenna sweep re-splits the array for fd use as well.
  CHECK(table->rows[1].antennas == 8);
}

TEST_CASE("per-point plan failures are recorded and the batch continues") {
  ScenarioConfig c;
  RunSpec spec;
  spec.mode = Mode::hd;
  spec.algorithms = {"closed-form"};
  spec.trials = 1;
  // 50 J cannot even cover the circuit draw: infeasible-energy.
  spec.sweeps = {{"ugv_energy_max", {50.0, 1.0e4}}};
  auto table = run_experiment(c, spec);
  REQUIRE(table.ok());
  REQUIRE(table->rows.size() == 2);
  CHECK(!table->rows[0].plan_ok);
  CHECK(table->rows[0].plan_error == "infeasible-energy");
  CHECK(table->rows[1].plan_ok);
  const std::string csv = experiment_csv(*table);
  CHECK(csv.find("error:infeasible-energy") != std::string::npos);
}

TEST_CASE("unknown sweep parameters are rejected") {
  ScenarioConfig c;
  RunSpec spec;
  spec.sweeps = {{"bogus", {1.0}}};
  auto table = run_experiment(c, spec);
  CHECK(!table.ok());
  CHECK(table.error.find("unknown parameter") != std::string::npos);
  ScenarioConfig probe;
  CHECK(!apply_param(probe, "bogus", 1.0));
  CHECK(apply_param(probe, "antennas", 16.0));
  CHECK(probe.tx_antennas == 8);
}

TEST_CASE("paired bootstrap confidence behaves at the extremes") {
  std::vector<double> lo(50), hi(50), tie(50);
  for (int i = 0; i < 50; ++i) {
    lo[i] = 10.0 + 0.01 * i;
    hi[i] = 11.0 + 0.01 * i;
    tie[i] = 10.0 + 0.01 * i;
  }
  CHECK(bootstrap_confidence_leq(lo, hi) > 0.99);
  CHECK(bootstrap_confidence_leq(hi, lo) < 0.01);
  CHECK(bootstrap_confidence_leq(lo, tie) == doctest::Approx(1.0));
}

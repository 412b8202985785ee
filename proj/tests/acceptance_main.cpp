// Acceptance suite: exercises every top-level requirement end to end and
// prints one [PASS]/[FAIL] line per criterion. Arguments: path to the CLI
// binary and to the reference scenario config (wired up by ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ugvbc/channel.hpp"
#include "ugvbc/config.hpp"
#include "ugvbc/fd_alloc.hpp"
#include "ugvbc/harness.hpp"
#include "ugvbc/hd_alloc.hpp"
#include "ugvbc/planner.hpp"

using namespace ugvbc;

namespace {

bool g_all_pass = true;

void report(int num, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", num,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  g_all_pass = g_all_pass && pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ScenarioConfig sweep_config(uint64_t seed, int draw) {
  CounterRng rng(seed, draw, 0, 0, 8);
  ScenarioConfig c;
  c.coverage_area = 100.0 + 1900.0 * rng.uniform();
  c.ap_height = 10.0 + 30.0 * rng.uniform();
  c.pathloss_tolerance = 0.2 + 0.8 * rng.uniform();
  c.pathloss_exponent = 2.2 + 1.3 * rng.uniform();
  return c;
}

CVector random_unit(CounterRng& rng, int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
  return v / v.norm();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> totals(const ScenarioConfig& c, const HexPlan& p,
                           uint64_t seed, int trials, Mode mode,
                           const std::string& alg, double* mean_iter = nullptr) {
  std::vector<double> out;
  out.reserve(trials);
  double iters = 0.0;
  for (int t = 0; t < trials; ++t) {
    TrialResult r = run_trial(c, p, seed, t, mode, alg);
    if (r.ok) {
      out.push_back(r.energy.total);
      iters += r.sca_iterations;
    }
  }
  if (mean_iter) *mean_iter = out.empty() ? 0.0 : iters / out.size();
  return out;
}

// ---- criterion 1: planning reproduction -----------------------------------
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig c;
  auto p = plan(c);
  const double elapsed = seconds_since(t0);
  bool pass = p.ok() && p->layers == 3 && p->cells == 36 && elapsed < 1.0;
  std::ostringstream os;
  os << "K*=" << (p.ok() ? p->layers : -1) << " M=" << (p.ok() ? p->cells : -1)
     << " in " << elapsed << " s";

  int prev_k = 0;
  bool k_monotone = true, r_has_drop = false;
  double prev_r = 0.0;
  for (double s = 100.0; s <= 1500.0; s += 20.0) {
    ScenarioConfig cs = c;
    cs.coverage_area = s;
    auto ls = optimal_layers(cs);
    if (!ls.ok()) {
      k_monotone = false;
      break;
    }
    if (*ls < prev_k) k_monotone = false;
    const double r = radius_from_layers(*ls, s);
    if (prev_k != 0 && r < prev_r - 1e-12) r_has_drop = true;
    prev_k = *ls;
    prev_r = r;
  }
  os << "; sweep K* non-decreasing=" << (k_monotone ? "yes" : "no")
     << ", r* has a decrease=" << (r_has_drop ? "yes" : "no");
  pass = pass && k_monotone && r_has_drop;
  report(1, "planning reproduction", pass, os.str());
}

// ---- criterion 2: planner oracle equivalence -------------------------------
void criterion_2() {
  ScenarioConfig table1;
  auto cf0 = optimal_layers(table1);
  auto bf0 = brute_force_layers(table1);
  bool pass = cf0.ok() && bf0.ok() && *cf0 == 3 && *bf0 == 3;

  const int draws = 200;
  int mismatches = 0;
  bool attributable = true;
  std::ostringstream os;
  for (int d = 0; d < draws; ++d) {
    ScenarioConfig c = sweep_config(5, d);
    auto cf = optimal_layers(c);
    auto bf = brute_force_layers(c);
    if (!cf.ok() || !bf.ok()) {
      if (cf.error != bf.error) {
        ++mismatches;
        attributable = false;
        os << " draw " << d << ": " << cf.error << " vs " << bf.error << ";";
      }
      continue;
    }
    if (*cf != *bf) {
      ++mismatches;
      os << " draw " << d << ": closed-form K*=" << *cf << ", oracle K*=" << *bf
         << ";";
      // Documented relaxation overshoot is the only accepted explanation.
      if (*cf != *bf + 1) attributable = false;
    }
  }
  const double frac = static_cast<double>(mismatches) / draws;
  pass = pass && frac < 0.05 && attributable;
  std::ostringstream head;
  head << mismatches << "/" << draws << " mismatches (" << 100.0 * frac
       << "%), all attributable=" << (attributable ? "yes" : "no") << ";"
       << os.str();
  report(2, "planner oracle equivalence", pass, head.str());
}

// ---- criterion 3: hd closed-form tightness ---------------------------------
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig c;
  auto p = plan(c);
  bool pass = p.ok();
  double worst_a = 0.0, worst_b = 0.0, worst_rate = 0.0;
  long served = 0;
  for (uint64_t trial = 0; trial < 1000 && pass; ++trial) {
    auto ch = sample_channels(2024, *p, c, Mode::hd, trial);
    auto out = allocate_hd(*p, *ch, c);
    if (!out.ok()) {
      pass = false;
      break;
    }
    auto th = hd_thresholds(*p, *ch, c);
    const auto& alloc = out->allocation;
    for (long m = 0; m < p->cells; ++m) {
      if (alloc.cell_skipped[m]) continue;
      const double vb = std::abs(alloc.p[m] *
                                     std::norm(alloc.v_cell[m].dot(ch->h[m])) /
                                     th.b[m] -
                                 1.0);
      worst_b = std::max(worst_b, vb);
      for (int i = 0; i < p->tags_per_cell_int; ++i) {
        if (alloc.skipped[m][i]) continue;
        ++served;
        worst_a = std::max(
            worst_a, std::abs(std::norm(ch->f[m][i].dot(alloc.w[m][i])) /
                                  th.a[m][i] -
                              1.0));
        worst_rate = std::max(
            worst_rate, std::abs(out->energy.rates[m][i] - c.rate_min));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  pass = pass && worst_a <= 1e-9 && worst_b <= 1e-12 && worst_rate <= 1e-9 &&
         elapsed < 10.0;
  std::ostringstream os;
  os << served << " tags over 1000 draws; max|gain/A-1|=" << worst_a
     << ", max|p|vh|^2/B-1|=" << worst_b << ", max|rate-Rmin|=" << worst_rate
     << ", " << elapsed << " s";
  report(3, "hd closed-form tightness", pass, os.str());
}

// ---- criterion 4: fd receiver optimality -----------------------------------
void criterion_4() {
  ScenarioConfig c;
  auto p = plan(c);
  bool pass = p.ok();
  int wins = 0;
  CounterRng rng(77, 0, 0, 0, 6);
  for (uint64_t inst = 0; inst < 100 && pass; ++inst) {
    auto ch = sample_channels(31, *p, c, Mode::fd, inst);
    const long m = static_cast<long>(inst % p->cells);
    auto th = fd_thresholds(*p, *ch, c);
    auto w = tx_beamform_hd(ch->f[m][0], th.a[m][0], c.ap_power_max);
    if (!w) continue;
    const CVector v = rx_beamform_fd(ch->h[m], ch->q_si, *w, c.noise_ap);
    auto quotient = [&](const CVector& u) {
      return std::norm(u.dot(ch->h[m])) /
             (std::norm(u.dot(ch->q_si * *w)) + c.noise_ap);
    };
    const double best = quotient(v);
    bool won = true;
    for (int t = 0; t < 10000; ++t)
      won = won && best >= quotient(random_unit(
                              rng, c.rx_antennas)) * (1.0 - 1e-12);
    if (won) ++wins;
    pass = pass && won;
  }

  int sign_ok = 0;
  for (uint64_t inst = 0; inst < 1000; ++inst) {
    auto ch = sample_channels(37, *p, c, Mode::fd, inst);
    const long m = static_cast<long>(inst % p->cells);
    auto th = fd_thresholds(*p, *ch, c);
    const double pw = 1e-3 + rng.uniform();
    const double post = si_constraint_residual(pw, ch->f[m][0], ch->h[m],
                                               ch->q_si, th.b[m], c.noise_ap);
    const double pre = si_constraint_residual_pre(pw, ch->f[m][0], ch->h[m],
                                                  ch->q_si, th.b[m], c.noise_ap);
    const double scale = std::max({1.0, std::abs(post), std::abs(pre)});
    const bool agree = (post <= 1e-8 * scale && pre >= -1e-8 * scale) ||
                       (post >= -1e-8 * scale && pre <= 1e-8 * scale);
    if (agree) ++sign_ok;
  }
  pass = pass && sign_ok == 1000;
  std::ostringstream os;
  os << wins << "/100 receiver wins vs 10^4 random combiners; " << sign_ok
     << "/1000 residual-sign agreements";
  report(4, "fd receiver optimality", pass, os.str());
}

// ---- criterion 5: sca correctness ------------------------------------------
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig c;
  c.antennas = 4;
  c.tx_antennas = c.rx_antennas = 2;
  c.noise_reader = 0.5;
  c.noise_ap = 0.25;
  c.reader_power_max = 5.0;

  bool pass = true;
  double worst_gap = 0.0, worst_violation = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    HexPlan p;
    p.layers = 1;
    p.radius = 1.0;
    p.cells = 1;
    p.tags_per_cell = 1.0;
    p.tags_per_cell_int = 1;
    p.cell_layer = {1};
    p.cell_distance = {1.0};
    p.trajectory = {1};
    p.motion_time = 4.0;
    p.block_length = 5.0;
    p.tx_energy_budget = 50.0;

    auto ch = sample_channels(900 + inst, p, c, Mode::fd, 0);
    auto sca = jo_sca(p, *ch, c);
    if (!sca.ok() || sca->allocation.served_tags() != 1) continue;

    const auto& hist = sca->allocation.objective_history;
    for (std::size_t i = 1; i < hist.size(); ++i)
      pass = pass && hist[i] <= hist[i - 1] + 1e-8 * std::max(1.0, hist[i - 1]);

    auto th = fd_thresholds(p, *ch, c);
    const CVector& w = sca->allocation.w[0][0];
    const double pm = sca->allocation.p[0];
    const double down_violation =
        (th.a[0][0] - std::norm(ch->f[0][0].dot(w))) /
        std::max(1.0, th.a[0][0]);
    const double si_violation =
        si_constraint_residual(pm, w, ch->h[0], ch->q_si, th.b[0], c.noise_ap) /
        std::max(1.0, ch->h[0].squaredNorm());
    worst_violation =
        std::max({worst_violation, down_violation, si_violation,
                  (w.squaredNorm() - c.ap_power_max) / c.ap_power_max});

    // Grid oracle over the 3 free real parameters of w (p analytic per w).
    const CVector& f = ch->f[0][0];
    const CVector fhat = f / f.norm();
    CVector uhat(2);
    uhat << -std::conj(fhat[1]), std::conj(fhat[0]);
    double best = 1e300;
    double cx = std::sqrt(th.a[0][0]) / f.norm(), cy = 0.0, cz = 0.0;
    double radius = std::sqrt(c.ap_power_max);
    const int n = 48;
    for (int pass_i = 0; pass_i < 4; ++pass_i) {
      double bx = cx, by = cy, bz = cz;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          for (int k = 0; k <= n; ++k) {
            const double x = cx - radius + 2.0 * radius * i / n;
            const double y = cy - radius + 2.0 * radius * j / n;
            const double z = cz - radius + 2.0 * radius * k / n;
            if (x * x * f.squaredNorm() < th.a[0][0]) continue;
            const double norm2 = x * x + y * y + z * z;
            if (norm2 > c.ap_power_max) continue;
            const CVector wg = x * fhat + cdouble(y, z) * uhat;
            const double preq =
                min_reader_power_fd(wg, ch->h[0], ch->q_si, th.b[0], c.noise_ap);
            if (preq > c.reader_power_max) continue;
            const double obj = norm2 + std::max(preq, 1e-9);
            if (obj < best) {
              best = obj;
              bx = x;
              by = y;
              bz = z;
            }
          }
      cx = bx;
      cy = by;
      cz = bz;
      radius *= 3.0 / n;
    }
    if (best < 1e300) {
      const double gap = std::abs(sca->allocation.objective - best) / best;
      worst_gap = std::max(worst_gap, gap);
    }
  }
  const double elapsed = seconds_since(t0);
  pass = pass && worst_gap <= 0.02 && worst_violation <= 1e-6 &&
         elapsed < 120.0;
  std::ostringstream os;
  os << "20 toys; worst grid gap=" << 100.0 * worst_gap
     << "%, worst constraint violation=" << worst_violation << ", " << elapsed
     << " s";
  report(5, "sca correctness", pass, os.str());
}

// ---- criterion 6: energy ordering ------------------------------------------
void criterion_6() {
  ScenarioConfig c;  // L = 8
  auto p = plan(c);
  const int trials = 100;
  const std::vector<std::string> algs = {"jo-sca", "so-fb", "rzf", "mrc-mrt",
                                         "so-epa"};
  std::vector<std::vector<double>> series;
  std::ostringstream os;
  for (const auto& alg : algs) {
    series.push_back(totals(c, *p, 2025, trials, Mode::fd, alg));
    os << alg << " mean=" << [&] {
      double s = 0.0;
      for (double v : series.back()) s += v;
      return series.back().empty() ? 0.0 : s / series.back().size();
    }() << " J; ";
  }
  bool pass = true;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const double conf = bootstrap_confidence_leq(series[i], series[i + 1]);
    pass = pass && series[i].size() == trials && conf >= 0.95;
    os << algs[i] << "<=" << algs[i + 1] << " conf=" << conf << "; ";
  }
  report(6, "fd energy ordering", pass, os.str());
}

// ---- criterion 7: fd vs hd ---------------------------------------------------
void criterion_7() {
  bool pass = true;
  std::ostringstream os;
  for (int l : {16, 32}) {
    for (double lambda : {0.4, 0.8}) {
      ScenarioConfig c;
      c.antennas = l;
      c.tx_antennas = c.rx_antennas = l / 2;
      c.tag_density = lambda;
      auto p = plan(c);
      if (!p.ok()) {
        pass = false;
        continue;
      }
      auto hd = totals(c, *p, 3000, 100, Mode::hd, "closed-form");
      auto fd = totals(c, *p, 3000, 100, Mode::fd, "jo-sca");
      double mh = 0.0, mf = 0.0;
      for (double v : hd) mh += v;
      for (double v : fd) mf += v;
      mh /= std::max<std::size_t>(1, hd.size());
      mf /= std::max<std::size_t>(1, fd.size());
      const double conf = bootstrap_confidence_leq(fd, hd);
      pass = pass && fd.size() == 100 && hd.size() == 100 && mf < mh &&
             conf >= 0.95;
      os << "L=" << l << " lambda=" << lambda << ": fd=" << mf << " hd=" << mh
         << " conf=" << conf << "; ";
    }
  }
  report(7, "fd beats hd on paired draws", pass, os.str());
}

// ---- criterion 8: antenna / tolerance monotonicity --------------------------
void criterion_8() {
  bool pass = true;
  std::ostringstream os;
  {
    std::vector<double> ap_means, reader_means;
    for (int l : {8, 16, 32, 64}) {
      ScenarioConfig c;
      c.antennas = l;
      c.tx_antennas = c.rx_antennas = l / 2;
      auto p = plan(c);
      double ap = 0.0, reader = 0.0;
      int n = 0;
      for (int t = 0; t < 100; ++t) {
        TrialResult r = run_trial(c, *p, 88, t, Mode::hd, "closed-form");
        if (!r.ok) continue;
        ap += r.energy.ap_tx + r.energy.ap_circuit;
        reader += r.energy.reader_tx;
        ++n;
      }
      ap_means.push_back(ap / n);
      reader_means.push_back(reader / n);
    }
    for (std::size_t i = 0; i + 1 < ap_means.size(); ++i) {
      pass = pass && ap_means[i + 1] <= ap_means[i] * (1.0 + 1e-12);
      pass = pass && reader_means[i + 1] <= reader_means[i] * (1.0 + 1e-12);
    }
    os << "E_AP over L: ";
    for (double v : ap_means) os << v << " ";
    os << "; reader over L: ";
    for (double v : reader_means) os << v << " ";
  }
  {
    std::vector<double> motion, reader_means;
    for (double theta : {0.2, 0.4, 0.8, 1.6}) {
      ScenarioConfig c;
      c.pathloss_tolerance = theta;
      auto p = plan(c);
      if (!p.ok()) {
        pass = false;
        continue;
      }
      double reader = 0.0;
      int n = 0;
      for (int t = 0; t < 100; ++t) {
        TrialResult r = run_trial(c, *p, 99, t, Mode::hd, "closed-form");
        if (!r.ok) continue;
        reader += r.energy.reader_tx;
        ++n;
      }
      motion.push_back((c.mobility_mu1 + c.mobility_mu2 * c.ugv_speed) *
                       p->motion_time);
      reader_means.push_back(reader / n);
    }
    for (std::size_t i = 0; i + 1 < motion.size(); ++i)
      pass = pass && motion[i + 1] < motion[i];
    double lo = 1e300, hi = 0.0, mean = 0.0;
    for (double v : reader_means) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      mean += v;
    }
    mean /= reader_means.size();
    pass = pass && (hi - lo) / mean < 0.10;
    os << "; motion over Theta: ";
    for (double v : motion) os << v << " ";
    os << "; reader spread=" << 100.0 * (hi - lo) / mean << "%";
  }
  report(8, "antenna and tolerance monotonicity", pass, os.str());
}

// ---- criterion 9: determinism ------------------------------------------------
void criterion_9(const std::string& cli, const std::string& config) {
  auto run_cli = [&](const std::string& out, int jobs) {
    std::ostringstream cmd;
    cmd << '"' << cli << '"' << " run --config \"" << config
        << "\" --mode fd --alg so-fb,rzf --trials 40 --seed 9 --jobs " << jobs
        << " --out " << out;
    return std::system(cmd.str().c_str());
  };
  const std::string a = "/tmp/ugvbc_accept_a.csv", b = "/tmp/ugvbc_accept_b.csv",
                    c3 = "/tmp/ugvbc_accept_c.csv";
  bool pass = run_cli(a, 1) == 0 && run_cli(b, 1) == 0 && run_cli(c3, 3) == 0;
  std::string sa = slurp(a), sb = slurp(b), sc = slurp(c3);
  pass = pass && !sa.empty() && sa == sb && sa == sc;
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c3.c_str());
  report(9, "byte-identical csv across reruns and worker counts", pass,
         pass ? "3 runs identical" : "outputs differ or cli failed");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "./build/tools/ugvbc";
  const std::string config = argc > 2 ? argv[2] : "configs/tableI.cfg";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(cli, config);
  std::printf("%s\n", g_all_pass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return g_all_pass ? 0 : 1;
}

#include "ugvbc/selftest.hpp"

#include <cmath>
#include <sstream>

#include "ugvbc/channel.hpp"
#include "ugvbc/config.hpp"
#include "ugvbc/fd_alloc.hpp"
#include "ugvbc/harness.hpp"
#include "ugvbc/hd_alloc.hpp"
#include "ugvbc/planner.hpp"

namespace ugvbc {

namespace {

CVector random_unit(CounterRng& rng, int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
  return v / v.norm();
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> out;
  auto check = [&](const std::string& name, bool pass, std::string detail = "") {
    out.push_back({name, pass, std::move(detail)});
  };
  const ScenarioConfig table1;  // defaults carry the reference setting

  {
    std::istringstream in(serialize_config(table1));
    auto round = parse_config(in);
    check("config round-trip", round.ok() && *round == table1, round.error);
  }
  {
    auto closed = optimal_layers(table1);
    auto oracle = brute_force_layers(table1);
    std::ostringstream os;
    if (closed.ok() && oracle.ok())
      os << "closed-form K*=" << *closed << ", oracle K*=" << *oracle;
    check("planner reference K*",
          closed.ok() && oracle.ok() && *closed == 3 && *oracle == 3, os.str());
  }
  {
    bool increasing = true;
    for (int k = 1; k < 12; ++k)
      increasing = increasing &&
                   motion_time(k + 1, table1.coverage_area, table1.ugv_speed) >
                       motion_time(k, table1.coverage_area, table1.ugv_speed);
    check("motion time strictly increasing", increasing);
  }

  auto planned = plan(table1);
  if (!planned.ok()) {
    check("plan(table1)", false, planned.error);
    return out;
  }
  {
    auto c1 = sample_channels(11, *planned, table1, Mode::fd, 3);
    auto c2 = sample_channels(11, *planned, table1, Mode::fd, 3);
    bool same = c1.ok() && c2.ok();
    if (same) {
      same = c1->q_si == c2->q_si;
      for (std::size_t m = 0; m < c1->g.size() && same; ++m)
        same = c1->g[m] == c2->g[m] && c1->h[m] == c2->h[m];
    }
    check("channel determinism", same);
  }
  {
    auto hd = allocate_hd(*planned, *sample_channels(5, *planned, table1, Mode::hd).value, table1);
    bool tight = hd.ok();
    double worst = 0.0;
    if (tight) {
      const auto& alloc = hd->allocation;
      auto th = hd_thresholds(*planned,
                              *sample_channels(5, *planned, table1, Mode::hd).value,
                              table1);
      for (long m = 0; m < planned->cells; ++m)
        for (int i = 0; i < planned->tags_per_cell_int; ++i) {
          if (alloc.skipped[m][i]) continue;
          const double rate = hd->energy.rates[m][i];
          worst = std::max(worst, std::abs(rate - table1.rate_min));
          (void)th;
        }
      tight = worst < 1e-9;
    }
    std::ostringstream os;
    os << "max |rate - R_min| = " << worst;
    check("hd closed-form rate tightness", tight, os.str());
  }
  {
    auto ch = sample_channels(17, *planned, table1, Mode::fd, 1);
    bool pass = ch.ok();
    if (pass) {
      CounterRng rng(123, 0, 0, 0, 9);
      const CVector& h = ch->h[0];
      const CVector& w0 = ch->f[0][0];  // any vector works as a beamformer here
      const CVector v = rx_beamform_fd(h, ch->q_si, w0, table1.noise_ap);
      auto quotient = [&](const CVector& v_) {
        return std::norm(v_.dot(h)) /
               (std::norm(v_.dot(ch->q_si * w0)) + table1.noise_ap);
      };
      const double best = quotient(v);
      for (int trial = 0; trial < 1000 && pass; ++trial)
        pass = best >= quotient(random_unit(rng, static_cast<int>(h.size()))) *
                           (1.0 - 1e-9);
      check("fd combiner maximality", pass);

      bool signs = true;
      CounterRng prng(321, 0, 0, 0, 9);
      for (int trial = 0; trial < 100 && signs; ++trial) {
        const long m = trial % planned->cells;
        const double p = 0.001 + prng.uniform();
        const double post = si_constraint_residual(
            p, ch->f[m][0], ch->h[m], ch->q_si, fd_thresholds(*planned, *ch, table1).b[m],
            table1.noise_ap);
        const double pre = si_constraint_residual_pre(
            p, ch->f[m][0], ch->h[m], ch->q_si, fd_thresholds(*planned, *ch, table1).b[m],
            table1.noise_ap);
        signs = (post <= 1e-8 && pre >= -1e-8) || (post >= -1e-8 && pre <= 1e-8);
      }
      check("si constraint two-form agreement", signs);
    } else {
      check("fd combiner maximality", false, ch.error);
    }
  }
  {
    TrialResult a = run_trial(table1, *planned, 42, 0, Mode::fd, "so-fb");
    TrialResult b = run_trial(table1, *planned, 42, 0, Mode::fd, "so-fb");
    check("trial determinism",
          a.ok && b.ok && a.energy.total == b.energy.total);
    check("energy components sum to total",
          a.ok && std::abs(a.energy.component_sum() - a.energy.total) <=
                      1e-9 * a.energy.total);
  }
  return out;
}

}  // namespace ugvbc

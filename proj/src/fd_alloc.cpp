#include "ugvbc/fd_alloc.hpp"

#include <cmath>
#include <limits>

namespace ugvbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-draw data shared by every FD allocator: thresholds, the common
// downlink admission set, the MRT-from-threshold beamformers and the
// self-interference products.
struct FdContext {
  long cells = 0;
  int tags = 0;
  double noise = 0.0;  // sigma^2 at the AP
  FdThresholds th;
  std::vector<std::vector<uint8_t>> admit;
  std::vector<std::vector<CVector>> w_fb;
  CMatrix qhq;                 // Q^H Q
  Eigen::MatrixXd s0;          // RR(Q^H Q)
  Eigen::MatrixXd s0_factor;   // RR(Q)
  std::vector<CVector> qh;     // Q^H h_m
};

FdContext make_context(const HexPlan& plan, const ChannelSet& channels,
                       const ScenarioConfig& config) {
  FdContext ctx;
  ctx.cells = plan.cells;
  ctx.tags = plan.tags_per_cell_int;
  ctx.noise = config.noise_ap;
  ctx.th = fd_thresholds(plan, channels, config);
  ctx.admit.assign(ctx.cells, std::vector<uint8_t>(ctx.tags, 0));
  ctx.w_fb.assign(ctx.cells, std::vector<CVector>(ctx.tags));
  if (ctx.tags > 0) {
    ctx.qhq = channels.q_si.adjoint() * channels.q_si;
    ctx.s0 = real_rep(ctx.qhq);
    ctx.s0_factor = real_rep(channels.q_si);
    ctx.qh.resize(ctx.cells);
  }
  for (long m = 0; m < ctx.cells; ++m) {
    if (ctx.tags > 0) ctx.qh[m] = channels.q_si.adjoint() * channels.h[m];
    for (int i = 0; i < ctx.tags; ++i) {
      if (ctx.th.zero_channel[m][i]) continue;
      auto w = tx_beamform_hd(channels.f[m][i], ctx.th.a[m][i],
                              config.ap_power_max);
      if (!w) continue;
      ctx.w_fb[m][i] = std::move(*w);
      ctx.admit[m][i] = 1;
    }
  }
  return ctx;
}

Allocation empty_fd_allocation(const HexPlan& plan, const std::string& name) {
  Allocation alloc;
  alloc.mode = Mode::fd;
  alloc.algorithm = name;
  alloc.w.assign(plan.cells, std::vector<CVector>(plan.tags_per_cell_int));
  alloc.v_tag.assign(plan.cells, std::vector<CVector>(plan.tags_per_cell_int));
  alloc.p = Eigen::VectorXd::Zero(plan.cells);
  alloc.skipped.assign(plan.cells,
                       std::vector<uint8_t>(plan.tags_per_cell_int, 1));
  alloc.cell_skipped.assign(plan.cells, 0);
  alloc.cell_flag.assign(plan.cells, "");
  return alloc;
}

// Rates, combiners, objective and the energy ledger for a finished FD
// allocation (w and p already in place, skip flags final).
AllocationOutcome finish_fd(const HexPlan& plan, const ChannelSet& channels,
                            const ScenarioConfig& config, Allocation alloc) {
  std::vector<std::vector<double>> rates(
      plan.cells, std::vector<double>(plan.tags_per_cell_int, 0.0));
  double objective = 0.0;
  for (long m = 0; m < plan.cells; ++m) {
    if (!alloc.cell_skipped[m]) objective += plan.tags_per_cell * alloc.p[m];
    for (int i = 0; i < plan.tags_per_cell_int; ++i) {
      if (alloc.skipped[m][i]) continue;
      objective += alloc.w[m][i].squaredNorm();
      if (alloc.v_tag[m][i].size() == 0)
        alloc.v_tag[m][i] = rx_beamform_fd(channels.h[m], channels.q_si,
                                           alloc.w[m][i], config.noise_ap);
      rates[m][i] = fd_rate(alloc.w[m][i], alloc.v_tag[m][i], alloc.p[m],
                            channels, plan, config, m, i);
    }
  }
  alloc.objective = objective;
  AllocationOutcome out;
  out.energy = energy_report(plan, config, alloc, std::move(rates));
  out.allocation = std::move(alloc);
  return out;
}

void skip_cell(Allocation& alloc, long m, const std::string& flag) {
  alloc.cell_skipped[m] = 1;
  alloc.cell_flag[m] = flag;
  alloc.p[m] = 0.0;
  for (auto& s : alloc.skipped[m]) s = 1;
}

// Per-cell powers for the fixed-beamforming methods; `required` gives the
// per-tag minimum power at the chosen combiner. Two policies: the theorem
// conditions suspend an over-cap cell outright, the benchmark policy clamps
// it to p_max and flags the missed rate target instead.
enum class CapPolicy { suspend, clamp };

template <typename RequiredPower>
void closed_form_powers(const FdContext& ctx, const HexPlan& plan,
                        double p_max, Allocation& alloc,
                        RequiredPower required, const char* cap_flag,
                        CapPolicy policy) {
  double sum = 0.0;
  for (long m = 0; m < ctx.cells; ++m) {
    double dm = 0.0;
    bool any = false;
    for (int i = 0; i < ctx.tags; ++i) {
      if (alloc.skipped[m][i]) continue;
      dm = std::max(dm, required(m, i));
      any = true;
    }
    if (!any) {
      skip_cell(alloc, m, "no-served-tags");
      continue;
    }
    if (!(dm <= p_max)) {
      if (policy == CapPolicy::suspend) {
        skip_cell(alloc, m, cap_flag);
        continue;
      }
      alloc.cell_flag[m] = cap_flag;  // transmits at the cap, rate missed
      dm = p_max;
    }
    alloc.p[m] = dm;
    sum += dm;
  }
  if (plan.tags_per_cell * sum > plan.tx_energy_budget) {
    alloc.budget_exceeded = true;
    if (policy == CapPolicy::clamp && sum > 0.0) {
      const double scale = plan.tx_energy_budget / (plan.tags_per_cell * sum);
      alloc.p *= std::max(0.0, scale);
    }
  }
}

}  // namespace

FdThresholds fd_thresholds(const HexPlan& plan, const ChannelSet& channels,
                           const ScenarioConfig& config) {
  const double gap = std::pow(2.0, config.rate_min) - 1.0;
  FdThresholds th;
  th.a.resize(plan.cells);
  th.b.resize(plan.cells);
  th.zero_channel.resize(plan.cells);
  for (long m = 0; m < plan.cells; ++m) {
    const double dpow = std::pow(plan.cell_distance[m], config.pathloss_exponent);
    th.b[m] = dpow * gap;
    th.a[m].resize(plan.tags_per_cell_int);
    th.zero_channel[m].assign(plan.tags_per_cell_int, 0);
    for (int i = 0; i < plan.tags_per_cell_int; ++i) {
      const double denom = config.reflection * std::norm(channels.g[m][i]);
      if (denom > 0.0) {
        th.a[m][i] = config.noise_reader * dpow * gap / denom;
      } else {
        th.a[m][i] = kInf;
        th.zero_channel[m][i] = 1;
      }
    }
  }
  return th;
}

CVector rx_beamform_fd(const CVector& h, const CMatrix& q_si, const CVector& w,
                       double noise_ap) {
  const CVector u = q_si * w;
  // Rank-one inverse applied to h: (u u^H + s I)^-1 h.
  const cdouble uh = u.dot(h);  // u^H h
  CVector v = h / noise_ap - u * (uh / (noise_ap * (noise_ap + u.squaredNorm())));
  return v / v.norm();
}

double si_constraint_residual(double p, const CVector& w, const CVector& h,
                              const CMatrix& q_si, double b, double noise_ap) {
  const CVector u = q_si * w;
  const double qw2 = u.squaredNorm();
  const double h2 = h.squaredNorm();
  const double hqw2 = std::norm(h.dot(u));  // |h^H Q w|^2
  return noise_ap / p * b * (qw2 + noise_ap) + hqw2 - h2 * qw2 - noise_ap * h2;
}

double si_constraint_residual_pre(double p, const CVector& w, const CVector& h,
                                  const CMatrix& q_si, double b,
                                  double noise_ap) {
  const CVector u = q_si * w;
  CMatrix sigma = u * u.adjoint();
  sigma.diagonal().array() += noise_ap;
  const CVector y = sigma.llt().solve(h);
  return p * h.dot(y).real() - b;
}

double min_reader_power_fd(const CVector& w, const CVector& h,
                           const CMatrix& q_si, double b, double noise_ap) {
  const CVector u = q_si * w;
  const double qw2 = u.squaredNorm();
  const double h2 = h.squaredNorm();
  const double hqw2 = std::norm(h.dot(u));
  const double denom = h2 * qw2 - hqw2 + noise_ap * h2;
  return noise_ap * b * (qw2 + noise_ap) / denom;
}

LinearizedTag linearized_constraints(const CVector& w_prev, const CVector& f,
                                     double a, const CVector& h,
                                     const CMatrix& q_si, double b,
                                     double noise_ap) {
  LinearizedTag out;
  const cdouble fw = f.dot(w_prev);  // f^H w_prev
  out.downlink.b = a + std::norm(fw);
  out.downlink.a = -2.0 * re_inner_vector(f * fw);

  const double h2 = h.squaredNorm();
  const CVector u = q_si.adjoint() * h;  // |u^H w|^2 = |h^H Q w|^2
  const CVector qw_prev = q_si * w_prev;
  out.si.s_scale = noise_ap * b;
  out.si.c1 = noise_ap * noise_ap * b;
  out.si.ra = re_inner_vector(u);
  out.si.rb = im_inner_vector(u);
  out.si.g = -2.0 * h2 * re_inner_vector(q_si.adjoint() * qw_prev);
  out.si.e = h2 * qw_prev.squaredNorm() - noise_ap * h2;
  return out;
}

double fd_rate(const CVector& w, const CVector& v, double p,
               const ChannelSet& channels, const HexPlan& plan,
               const ScenarioConfig& config, long cell, long tag) {
  const double dpow =
      std::pow(plan.cell_distance[cell], config.pathloss_exponent);
  const double g2 = std::norm(channels.g[cell][tag]);
  const double down = config.reflection * g2 * std::norm(channels.f[cell][tag].dot(w)) /
                      (config.noise_reader * dpow);
  const double sig = p / dpow * std::norm(v.dot(channels.h[cell]));
  const double interference = std::norm(v.dot(channels.q_si * w));
  const double up = sig / (interference + config.noise_ap);
  return std::min(std::log2(1.0 + down), std::log2(1.0 + up));
}

Result<AllocationOutcome> so_fb(const HexPlan& plan, const ChannelSet& channels,
                                const ScenarioConfig& config) {
  FdContext ctx = make_context(plan, channels, config);
  Allocation alloc = empty_fd_allocation(plan, "so-fb");
  for (long m = 0; m < ctx.cells; ++m)
    for (int i = 0; i < ctx.tags; ++i)
      if (ctx.admit[m][i]) {
        alloc.w[m][i] = ctx.w_fb[m][i];
        alloc.skipped[m][i] = 0;
      }
  closed_form_powers(
      ctx, plan, config.reader_power_max, alloc,
      [&](long m, int i) {
        return min_reader_power_fd(alloc.w[m][i], channels.h[m], channels.q_si,
                                   ctx.th.b[m], ctx.noise);
      },
      "so-fb-infeasible: cap-exceeded", CapPolicy::suspend);
  return Result<AllocationOutcome>::success(
      finish_fd(plan, channels, config, std::move(alloc)));
}

Result<AllocationOutcome> baseline_mrc_mrt(const HexPlan& plan,
                                           const ChannelSet& channels,
                                           const ScenarioConfig& config) {
  FdContext ctx = make_context(plan, channels, config);
  Allocation alloc = empty_fd_allocation(plan, "mrc-mrt");
  for (long m = 0; m < ctx.cells; ++m) {
    const CVector v = channels.h[m].squaredNorm() > 0.0
                          ? rx_beamform_hd(channels.h[m])
                          : CVector();
    for (int i = 0; i < ctx.tags; ++i)
      if (ctx.admit[m][i] && v.size() > 0) {
        alloc.w[m][i] = ctx.w_fb[m][i];
        alloc.v_tag[m][i] = v;
        alloc.skipped[m][i] = 0;
      }
  }
  closed_form_powers(
      ctx, plan, config.reader_power_max, alloc,
      [&](long m, int i) {
        // Smallest power meeting the SINR target at the fixed (w, v).
        const CVector& v = alloc.v_tag[m][i];
        const double vh2 = std::norm(v.dot(channels.h[m]));
        const double vqw2 = std::norm(v.dot(channels.q_si * alloc.w[m][i]));
        return ctx.th.b[m] * (vqw2 + ctx.noise) / vh2;
      },
      "cap-clamped", CapPolicy::clamp);
  return Result<AllocationOutcome>::success(
      finish_fd(plan, channels, config, std::move(alloc)));
}

Result<AllocationOutcome> baseline_rzf(const HexPlan& plan,
                                       const ChannelSet& channels,
                                       const ScenarioConfig& config) {
  FdContext ctx = make_context(plan, channels, config);
  Allocation alloc = empty_fd_allocation(plan, "rzf");
  for (long m = 0; m < ctx.cells; ++m)
    for (int i = 0; i < ctx.tags; ++i)
      if (ctx.admit[m][i] && channels.h[m].squaredNorm() > 0.0) {
        alloc.w[m][i] = ctx.w_fb[m][i];
        alloc.v_tag[m][i] = rx_beamform_fd(channels.h[m], channels.q_si,
                                           alloc.w[m][i], ctx.noise);
        alloc.skipped[m][i] = 0;
      }
  closed_form_powers(
      ctx, plan, config.reader_power_max, alloc,
      [&](long m, int i) {
        const CVector& v = alloc.v_tag[m][i];
        const double vh2 = std::norm(v.dot(channels.h[m]));
        const double vqw2 = std::norm(v.dot(channels.q_si * alloc.w[m][i]));
        return ctx.th.b[m] * (vqw2 + ctx.noise) / vh2;
      },
      "cap-clamped", CapPolicy::clamp);
  return Result<AllocationOutcome>::success(
      finish_fd(plan, channels, config, std::move(alloc)));
}

Result<AllocationOutcome> so_epa(const HexPlan& plan, const ChannelSet& channels,
                                 const ScenarioConfig& config,
                                 const FdOptions& opts) {
  FdContext ctx = make_context(plan, channels, config);
  Allocation alloc = empty_fd_allocation(plan, "so-epa");
  if (ctx.tags == 0)
    return Result<AllocationOutcome>::success(
        finish_fd(plan, channels, config, std::move(alloc)));

  const double p_epa =
      std::min(plan.tx_energy_budget /
                   (plan.tags_per_cell * static_cast<double>(plan.cells)),
               config.reader_power_max);
  if (!(p_epa > 0.0))
    return Result<AllocationOutcome>::failure("negative-budget");

  convex::Subproblem base;
  base.block_dim = 2 * config.tx_antennas;
  base.s0 = ctx.s0;
  base.s0_factor = ctx.s0_factor;

  int total_iters = 0, solved_tags = 0;
  for (long m = 0; m < ctx.cells; ++m) {
    for (int i = 0; i < ctx.tags; ++i) {
      if (!ctx.admit[m][i]) continue;
      // Strictly feasible start at the fixed power: slightly scaled MRT, or
      // a crosstalk-free least-norm beamformer when the MRT point violates
      // the SI row.
      const CVector& f = channels.f[m][i];
      const double a = ctx.th.a[m][i];
      auto feasible = [&](const CVector& w) {
        return w.squaredNorm() < config.ap_power_max * (1.0 - 1e-12) &&
               si_constraint_residual(p_epa, w, channels.h[m], channels.q_si,
                                      ctx.th.b[m], ctx.noise) < 0.0 &&
               std::norm(f.dot(w)) > a;
      };
      CVector w0 = (1.0 + 1e-3) * ctx.w_fb[m][i];
      if (!feasible(w0)) {
        // Least-norm w with f^H w = sqrt(a)(1+eps) and h^H Q w = 0.
        const CVector& u = ctx.qh[m];
        Eigen::Matrix2cd gram;
        gram << f.squaredNorm(), f.dot(u), u.dot(f), u.squaredNorm();
        Eigen::Vector2cd rhs(std::sqrt(a) * (1.0 + 1e-3), 0.0);
        const Eigen::Vector2cd coef = gram.fullPivLu().solve(rhs);
        w0 = f * coef[0] + u * coef[1];
        if (!feasible(w0)) continue;  // tag stays skipped at this power
      }

      convex::Subproblem sp = base;
      sp.blocks.resize(1);
      double prev_obj = w0.squaredNorm();
      CVector w_prev = w0;
      Eigen::VectorXd p0(0);
      bool stalled = true;
      for (int n = 1; n <= opts.sca_max_iterations; ++n) {
        LinearizedTag lt = linearized_constraints(
            w_prev, f, a, channels.h[m], channels.q_si, ctx.th.b[m], ctx.noise);
        lt.si.fixed_p = p_epa;
        sp.blocks[0] = convex::WBlock{};
        sp.blocks[0].cell = -1;
        sp.blocks[0].linear = {lt.downlink};
        sp.blocks[0].norm_caps = {config.ap_power_max};
        sp.blocks[0].mixed = {lt.si};
        convex::Options sopts = opts.solver;
        sopts.t_start = 64.0;
        auto sol = convex::solve(sp, {to_real(w_prev)}, p0, sopts);
        if (!sol.error.empty() && !sol.converged) break;
        ++total_iters;
        w_prev = to_complex(sol.x[0]);
        if (std::abs(sol.objective - prev_obj) <=
            opts.sca_tolerance * std::max(1.0, prev_obj)) {
          stalled = false;
          prev_obj = sol.objective;
          break;
        }
        prev_obj = sol.objective;
      }
      alloc.w[m][i] = w_prev;
      alloc.skipped[m][i] = 0;
      alloc.sca_stalled = alloc.sca_stalled || stalled;
      ++solved_tags;
    }
  }

  for (long m = 0; m < ctx.cells; ++m) {
    bool any = false;
    for (int i = 0; i < ctx.tags; ++i) any = any || !alloc.skipped[m][i];
    if (any) {
      alloc.p[m] = p_epa;
    } else {
      skip_cell(alloc, m, "no-served-tags");
    }
  }
  // Equal power is built to respect the budget; assert rather than re-derive.
  alloc.budget_exceeded =
      plan.tags_per_cell * alloc.p.sum() > plan.tx_energy_budget * (1.0 + 1e-12);
  alloc.sca_iterations = solved_tags > 0 ? (total_iters + solved_tags - 1) / solved_tags : 0;
  return Result<AllocationOutcome>::success(
      finish_fd(plan, channels, config, std::move(alloc)));
}

Result<AllocationOutcome> jo_sca(const HexPlan& plan, const ChannelSet& channels,
                                 const ScenarioConfig& config,
                                 const FdOptions& opts) {
  FdContext ctx = make_context(plan, channels, config);
  Allocation alloc = empty_fd_allocation(plan, "jo-sca");
  if (ctx.tags == 0)
    return Result<AllocationOutcome>::success(
        finish_fd(plan, channels, config, std::move(alloc)));

  const double p_max = config.reader_power_max;
  const double p_floor = opts.p_floor;

  // Initialization from the fixed-beamforming solution: scale the MRT point
  // slightly off the downlink boundary, set powers 10% above the SI boundary.
  struct TagRef {
    long m;
    int i;
  };
  std::vector<TagRef> tags;
  std::vector<long> cell_of;  // active-cell index per cell, -1 when inactive
  cell_of.assign(ctx.cells, -1);
  std::vector<long> active_cells;

  std::vector<std::vector<CVector>> w0(ctx.cells,
                                       std::vector<CVector>(ctx.tags));
  Eigen::VectorXd d_init = Eigen::VectorXd::Zero(ctx.cells);
  for (long m = 0; m < ctx.cells; ++m) {
    bool any = false;
    double dm = 0.0;
    for (int i = 0; i < ctx.tags; ++i) {
      if (!ctx.admit[m][i]) continue;
      const double norm2 = ctx.w_fb[m][i].squaredNorm();
      if (norm2 >= config.ap_power_max * (1.0 - 1e-9)) continue;  // boundary
      const double eps = std::min(
          1e-3, 0.5 * (std::sqrt(config.ap_power_max / norm2) - 1.0));
      w0[m][i] = (1.0 + eps) * ctx.w_fb[m][i];
      dm = std::max(dm, min_reader_power_fd(w0[m][i], channels.h[m],
                                            channels.q_si, ctx.th.b[m],
                                            ctx.noise));
      any = true;
    }
    if (!any) {
      skip_cell(alloc, m, "no-served-tags");
      continue;
    }
    if (!(dm < p_max * (1.0 - 1e-9))) {
      skip_cell(alloc, m, "no-feasible-init");
      continue;
    }
    d_init[m] = dm;
    cell_of[m] = static_cast<long>(active_cells.size());
    active_cells.push_back(m);
    for (int i = 0; i < ctx.tags; ++i)
      if (ctx.admit[m][i] && w0[m][i].size() > 0) tags.push_back({m, i});
  }
  if (tags.empty())
    return Result<AllocationOutcome>::failure("no-feasible-init");

  const long nc = static_cast<long>(active_cells.size());
  Eigen::VectorXd p_prev(nc);
  for (long c = 0; c < nc; ++c) {
    const double d = d_init[active_cells[c]];
    p_prev[c] = std::max(std::min(1.1 * d, d + 0.5 * (p_max - d)), 2.0 * p_floor);
  }
  if (plan.tags_per_cell * p_prev.sum() >=
      plan.tx_energy_budget * (1.0 - 1e-12))
    return Result<AllocationOutcome>::failure("no-feasible-init");

  std::vector<CVector> w_prev(tags.size());
  std::vector<Eigen::VectorXd> x_prev(tags.size());
  for (std::size_t t = 0; t < tags.size(); ++t) {
    w_prev[t] = w0[tags[t].m][tags[t].i];
    x_prev[t] = to_real(w_prev[t]);
  }

  convex::Subproblem sp;
  sp.block_dim = 2 * config.tx_antennas;
  sp.s0 = ctx.s0;
  sp.s0_factor = ctx.s0_factor;
  sp.blocks.resize(tags.size());
  sp.pvars.assign(nc, convex::PVar{p_floor, p_max, plan.tags_per_cell});
  sp.budget_coeff = Eigen::VectorXd::Constant(nc, plan.tags_per_cell);
  sp.budget_limit = plan.tx_energy_budget;

  bool converged = false;
  int iterations = 0;
  for (int n = 1; n <= opts.sca_max_iterations; ++n) {
    for (std::size_t t = 0; t < tags.size(); ++t) {
      const auto [m, i] = tags[t];
      LinearizedTag lt =
          linearized_constraints(w_prev[t], channels.f[m][i], ctx.th.a[m][i],
                                 channels.h[m], channels.q_si, ctx.th.b[m],
                                 ctx.noise);
      sp.blocks[t] = convex::WBlock{};
      sp.blocks[t].cell = static_cast<int>(cell_of[m]);
      sp.blocks[t].linear = {lt.downlink};
      sp.blocks[t].norm_caps = {config.ap_power_max};
      sp.blocks[t].mixed = {lt.si};
    }
    convex::Options sopts = opts.solver;
    // The fixed-beamforming start is already close to optimal, so the
    // continuation can begin well past the analytic-center regime.
    sopts.t_start = 64.0;
    auto sol = convex::solve(sp, x_prev, p_prev, sopts);
    if (sol.error.rfind("infeasible", 0) == 0) {
      if (n == 1) return Result<AllocationOutcome>::failure("no-feasible-init");
      alloc.sca_stalled = true;  // keep the previous iterate
      break;
    }
    ++iterations;
    alloc.objective_history.push_back(sol.objective);
    x_prev = sol.x;
    p_prev = sol.p;
    for (std::size_t t = 0; t < tags.size(); ++t) w_prev[t] = to_complex(x_prev[t]);
    const std::size_t hist = alloc.objective_history.size();
    if (!sol.converged) {
      alloc.sca_stalled = true;
      break;
    }
    if (hist >= 2) {
      const double prev = alloc.objective_history[hist - 2];
      if (std::abs(alloc.objective_history[hist - 1] - prev) <=
          opts.sca_tolerance * std::max(1.0, std::abs(prev))) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) alloc.sca_stalled = true;

  for (std::size_t t = 0; t < tags.size(); ++t) {
    const auto [m, i] = tags[t];
    alloc.w[m][i] = w_prev[t];
    alloc.skipped[m][i] = 0;
  }
  for (long c = 0; c < nc; ++c) alloc.p[active_cells[c]] = p_prev[c];
  alloc.sca_iterations = iterations;
  return Result<AllocationOutcome>::success(
      finish_fd(plan, channels, config, std::move(alloc)));
}

Result<AllocationOutcome> allocate_fd(const std::string& algorithm,
                                      const HexPlan& plan,
                                      const ChannelSet& channels,
                                      const ScenarioConfig& config,
                                      const FdOptions& opts) {
  if (algorithm == "jo-sca") return jo_sca(plan, channels, config, opts);
  if (algorithm == "so-epa") return so_epa(plan, channels, config, opts);
  if (algorithm == "so-fb") return so_fb(plan, channels, config);
  if (algorithm == "mrc-mrt") return baseline_mrc_mrt(plan, channels, config);
  if (algorithm == "rzf") return baseline_rzf(plan, channels, config);
  return Result<AllocationOutcome>::failure("unknown-algorithm: " + algorithm);
}

}  // namespace ugvbc

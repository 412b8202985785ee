#include "ugvbc/convex.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace ugvbc::convex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInnerTol = 1e-10;  // Newton decrement threshold per stage
constexpr double kMu = 20.0;         // barrier continuation factor

double mixed_p(const Subproblem& sp, const WBlock& blk,
               const MixedConstraint& mc, const Eigen::VectorXd& p) {
  return blk.cell >= 0 ? p[blk.cell] : mc.fixed_p;
}

double mixed_value(const Subproblem& sp, const MixedConstraint& mc,
                   const Eigen::VectorXd& x, double pv) {
  double num = mc.c1;
  if (mc.s_scale != 0.0) num += mc.s_scale * x.dot(sp.s0 * x);
  const double rav = mc.ra.dot(x), rbv = mc.rb.dot(x);
  return num / pv + rav * rav + rbv * rbv + mc.g.dot(x) + mc.e;
}

// Evaluates every constraint; returns max f_i and optionally its description.
double max_violation(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x,
                     const Eigen::VectorXd& p, std::string* worst) {
  double vmax = -kInf;
  auto consider = [&](double v, const char* what, int b, int j) {
    if (v > vmax) {
      vmax = v;
      if (worst) {
        std::ostringstream os;
        os << what;
        if (b >= 0) os << " block " << b;
        if (j >= 0) os << " #" << j;
        os << " value " << v;
        *worst = os.str();
      }
    }
  };
  for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
    const WBlock& blk = sp.blocks[b];
    for (std::size_t j = 0; j < blk.linear.size(); ++j)
      consider(blk.linear[j].b + blk.linear[j].a.dot(x[b]), "linear", b, j);
    for (std::size_t j = 0; j < blk.norm_caps.size(); ++j)
      consider(x[b].squaredNorm() - blk.norm_caps[j], "norm-cap", b, j);
    for (std::size_t j = 0; j < blk.mixed.size(); ++j)
      consider(mixed_value(sp, blk.mixed[j], x[b], mixed_p(sp, blk, blk.mixed[j], p)),
               "mixed", b, j);
  }
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    consider(sp.pvars[m].lower - p[m], "p-lower", m, -1);
    consider(p[m] - sp.pvars[m].upper, "p-upper", m, -1);
  }
  if (sp.budget_coeff.size() > 0)
    consider(sp.budget_coeff.dot(p) - sp.budget_limit, "budget", -1, -1);
  return vmax;
}

Eigen::VectorXd dual_multipliers(const Subproblem& sp,
                                 const std::vector<Eigen::VectorXd>& x,
                                 const Eigen::VectorXd& p, double t_bar) {
  std::vector<double> lam;
  auto push = [&](double f) { lam.push_back(1.0 / (t_bar * (-f))); };
  for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
    const WBlock& blk = sp.blocks[b];
    for (const auto& lc : blk.linear) push(lc.b + lc.a.dot(x[b]));
    for (double cap : blk.norm_caps) push(x[b].squaredNorm() - cap);
    for (const auto& mc : blk.mixed)
      push(mixed_value(sp, mc, x[b], mixed_p(sp, blk, mc, p)));
  }
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    push(sp.pvars[m].lower - p[m]);
    push(p[m] - sp.pvars[m].upper);
  }
  if (sp.budget_coeff.size() > 0) push(sp.budget_coeff.dot(p) - sp.budget_limit);
  return Eigen::Map<Eigen::VectorXd>(lam.data(), static_cast<long>(lam.size()));
}

double objective_value(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x,
                       const Eigen::VectorXd& p) {
  double v = 0.0;
  for (const auto& xi : x) v += xi.squaredNorm();
  for (Eigen::Index m = 0; m < p.size(); ++m) v += sp.pvars[m].cost * p[m];
  return v;
}

long count_constraints(const Subproblem& sp) {
  long m = 0;
  for (const auto& blk : sp.blocks)
    m += static_cast<long>(blk.linear.size() + blk.norm_caps.size() + blk.mixed.size());
  m += 2 * static_cast<long>(sp.pvars.size());
  if (sp.budget_coeff.size() > 0) ++m;
  return m;
}

// Barrier potential t*f0 - sum log(-f_i); +inf outside the interior.
double potential(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x,
                 const Eigen::VectorXd& p, double t_bar) {
  double phi = t_bar * objective_value(sp, x, p);
  auto add = [&](double f) {
    if (f >= 0.0) {
      phi = kInf;
      return false;
    }
    phi -= std::log(-f);
    return true;
  };
  for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
    const WBlock& blk = sp.blocks[b];
    for (const auto& lc : blk.linear)
      if (!add(lc.b + lc.a.dot(x[b]))) return kInf;
    for (double cap : blk.norm_caps)
      if (!add(x[b].squaredNorm() - cap)) return kInf;
    for (const auto& mc : blk.mixed)
      if (!add(mixed_value(sp, mc, x[b], mixed_p(sp, blk, mc, p)))) return kInf;
  }
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    if (!add(sp.pvars[m].lower - p[m])) return kInf;
    if (!add(p[m] - sp.pvars[m].upper)) return kInf;
  }
  if (sp.budget_coeff.size() > 0)
    if (!add(sp.budget_coeff.dot(p) - sp.budget_limit)) return kInf;
  return phi;
}

struct StructuredSolver {
  const Subproblem& sp;
  const Options& opts;
  int dim, nb, np;
  long m_total;

  std::vector<Eigen::VectorXd> x;
  Eigen::VectorXd p;

  // per-step workspaces
  std::vector<Eigen::MatrixXd> hess;    // A_t
  std::vector<Eigen::VectorXd> gradx;   // gx_t
  std::vector<Eigen::VectorXd> cross;   // H_xp column for the block's cell
  std::vector<Eigen::VectorXd> dx;
  std::vector<Eigen::VectorXd> zc;      // A^-1 cross per block
  std::vector<Eigen::LLT<Eigen::MatrixXd>> llts;
  Eigen::VectorXd gradp, diagp, dp;
  Eigen::VectorXd sxbuf, gxbuf, ybuf, rhsbuf, ddiagbuf;

  StructuredSolver(const Subproblem& s, const Options& o,
                   const std::vector<Eigen::VectorXd>& x0,
                   const Eigen::VectorXd& p0)
      : sp(s), opts(o), dim(s.block_dim), nb(static_cast<int>(s.blocks.size())),
        np(static_cast<int>(s.pvars.size())), m_total(count_constraints(s)),
        x(x0), p(p0) {
    hess.assign(nb, Eigen::MatrixXd(dim, dim));
    gradx.assign(nb, Eigen::VectorXd(dim));
    cross.assign(nb, Eigen::VectorXd(dim));
    dx.assign(nb, Eigen::VectorXd(dim));
    zc.assign(nb, Eigen::VectorXd(dim));
    llts.assign(nb, Eigen::LLT<Eigen::MatrixXd>(dim));
    gradp.resize(np);
    diagp.resize(np);
    dp.resize(np);
    sxbuf.resize(dim);
    gxbuf.resize(dim);
    ybuf.resize(dim);
    rhsbuf.resize(np);
    ddiagbuf.resize(np);
  }

  // Assembles the barrier Newton system at t_bar, eliminates the w blocks and
  // solves the remaining diag+rank1 p system. Returns the Newton decrement.
  double newton_direction(double t_bar) {
    for (int b = 0; b < nb; ++b) {
      hess[b].setIdentity();
      hess[b] *= 2.0 * t_bar;
      gradx[b] = 2.0 * t_bar * x[b];
      cross[b].setZero();
    }
    for (int m = 0; m < np; ++m) {
      gradp[m] = t_bar * sp.pvars[m].cost;
      diagp[m] = 0.0;
    }

    for (int b = 0; b < nb; ++b) {
      const WBlock& blk = sp.blocks[b];
      for (const auto& lc : blk.linear) {
        const double f = lc.b + lc.a.dot(x[b]);
        const double inv = 1.0 / (-f);
        gradx[b].noalias() += inv * lc.a;
        hess[b].noalias() += (inv * inv) * (lc.a * lc.a.transpose());
      }
      for (double cap : blk.norm_caps) {
        const double f = x[b].squaredNorm() - cap;
        const double inv = 1.0 / (-f);
        gradx[b].noalias() += (2.0 * inv) * x[b];
        hess[b].noalias() += (4.0 * inv * inv) * (x[b] * x[b].transpose());
        hess[b].diagonal().array() += 2.0 * inv;
      }
      for (const auto& mc : blk.mixed) {
        const double pv = mixed_p(sp, blk, mc, p);
        double num = mc.c1;
        if (mc.s_scale != 0.0) {
          sxbuf.noalias() = sp.s0 * x[b];
          num += mc.s_scale * x[b].dot(sxbuf);
        } else {
          sxbuf.setZero();
        }
        const double rav = mc.ra.dot(x[b]), rbv = mc.rb.dot(x[b]);
        const double f = num / pv + rav * rav + rbv * rbv + mc.g.dot(x[b]) + mc.e;
        const double inv = 1.0 / (-f);
        gxbuf = mc.g;
        gxbuf.noalias() += (2.0 * mc.s_scale / pv) * sxbuf;
        gxbuf.noalias() += (2.0 * rav) * mc.ra;
        gxbuf.noalias() += (2.0 * rbv) * mc.rb;
        gradx[b].noalias() += inv * gxbuf;
        hess[b].noalias() += (inv * inv) * (gxbuf * gxbuf.transpose());
        if (mc.s_scale != 0.0)
          hess[b].noalias() += (inv * 2.0 * mc.s_scale / pv) * sp.s0;
        hess[b].noalias() += (2.0 * inv) * (mc.ra * mc.ra.transpose());
        hess[b].noalias() += (2.0 * inv) * (mc.rb * mc.rb.transpose());
        if (blk.cell >= 0) {
          const double gp = -num / (pv * pv);
          gradp[blk.cell] += inv * gp;
          diagp[blk.cell] += inv * inv * gp * gp + inv * 2.0 * num / (pv * pv * pv);
          cross[b].noalias() += (inv * inv * gp) * gxbuf;
          cross[b].noalias() += (inv * (-2.0 * mc.s_scale / (pv * pv))) * sxbuf;
        }
      }
    }
    for (int m = 0; m < np; ++m) {
      const double lo = p[m] - sp.pvars[m].lower;   // -f for the lower box
      const double hi = sp.pvars[m].upper - p[m];
      gradp[m] += -1.0 / lo + 1.0 / hi;
      diagp[m] += 1.0 / (lo * lo) + 1.0 / (hi * hi);
    }
    double budget_beta = 0.0, budget_inv = 0.0;
    if (sp.budget_coeff.size() > 0) {
      const double f = sp.budget_coeff.dot(p) - sp.budget_limit;
      budget_inv = 1.0 / (-f);
      gradp.noalias() += budget_inv * sp.budget_coeff;
      budget_beta = budget_inv * budget_inv;  // rank-1 u u^T with u = coeff
    }

    // Eliminate the w blocks.
    rhsbuf = -gradp;
    ddiagbuf = diagp;
    for (int b = 0; b < nb; ++b) {
      llts[b].compute(hess[b]);
      dx[b] = llts[b].solve(gradx[b]);  // temporarily A^-1 gx
      const int cell = sp.blocks[b].cell;
      if (cell >= 0 && cross[b].squaredNorm() > 0.0) {
        zc[b] = llts[b].solve(cross[b]);
        ddiagbuf[cell] -= cross[b].dot(zc[b]);
        rhsbuf[cell] += cross[b].dot(dx[b]);
      } else {
        zc[b].setZero();
      }
    }

    if (np > 0) {
      for (int m = 0; m < np; ++m)
        if (ddiagbuf[m] < 1e-300) ddiagbuf[m] = 1e-300;
      if (budget_beta > 0.0) {
        // Sherman-Morrison on diag + beta u u^T.
        const Eigen::VectorXd dinv_u =
            (sp.budget_coeff.array() / ddiagbuf.array()).matrix();
        const Eigen::VectorXd dinv_r = (rhsbuf.array() / ddiagbuf.array()).matrix();
        const double denom = 1.0 + budget_beta * sp.budget_coeff.dot(dinv_u);
        dp = dinv_r - (budget_beta * sp.budget_coeff.dot(dinv_r) / denom) * dinv_u;
      } else {
        dp = (rhsbuf.array() / ddiagbuf.array()).matrix();
      }
    }

    double decrement = 0.0;
    for (int b = 0; b < nb; ++b) {
      const int cell = sp.blocks[b].cell;
      if (cell >= 0) {
        dx[b] += zc[b] * dp[cell];
      }
      dx[b] = -dx[b];
      decrement -= gradx[b].dot(dx[b]);
    }
    if (np > 0) decrement -= gradp.dot(dp);
    return decrement;
  }

  // One centering stage; returns false when the step budget is exhausted.
  // `polish_steps` > 0 re-centers a bounded number of times with a tight
  // decrement target so the final stationarity residual is small.
  bool center(double t_bar, int* steps, int polish_steps = 0) {
    std::vector<Eigen::VectorXd> xn(nb, Eigen::VectorXd(dim));
    Eigen::VectorXd pn(np);
    const double inner_tol = polish_steps > 0 ? 1e-15 : kInnerTol;
    int local = 0;
    double prev_lambda2 = kInf;
    int stagnant = 0;
    for (;;) {
      if (*steps >= opts.max_newton) return false;
      if (polish_steps > 0 && local++ >= polish_steps) return true;
      const double lambda2 = newton_direction(t_bar);
      if (!(lambda2 / 2.0 >= inner_tol)) return true;  // also exits on NaN
      // Deep in the quadratic region the decrement should collapse fast;
      // when it stops improving we are at the floating-point noise floor.
      if (lambda2 < 1e-6) {
        stagnant = lambda2 > 0.25 * prev_lambda2 ? stagnant + 1 : 0;
        if (stagnant >= 3) return true;
      }
      prev_lambda2 = lambda2;
      ++*steps;

      bool accepted = false;
      if (lambda2 < 0.05) {
        // Quadratic-convergence region: damped feasibility backtrack only.
        // The potential decrease is guaranteed but can sit below the fp
        // granularity of t*f0, so it must not be tested directly.
        double step = 1.0;
        for (int tries = 0; tries < 60 && !accepted; ++tries) {
          for (int b = 0; b < nb; ++b) xn[b] = x[b] + step * dx[b];
          pn = p + step * dp;
          if (std::isfinite(potential(sp, xn, pn, t_bar))) accepted = true;
          else step *= 0.5;
        }
      } else {
        const double phi0 = potential(sp, x, p, t_bar);
        double step = 1.0;
        while (step >= 1e-16) {
          for (int b = 0; b < nb; ++b) xn[b] = x[b] + step * dx[b];
          pn = p + step * dp;
          const double phi = potential(sp, xn, pn, t_bar);
          if (phi <= phi0 - 0.01 * step * lambda2) {
            accepted = true;
            break;
          }
          step *= 0.5;
        }
      }
      if (!accepted) return true;  // stalled at numerical precision
      x.swap(xn);
      p.swap(pn);
    }
  }

  Solution run() {
    Solution sol;
    std::string worst;
    const double v0 = max_violation(sp, x, p, &worst);
    if (m_total > 0 && v0 >= 0.0) {
      sol.error = "infeasible: " + worst;
      sol.max_violation = v0;
      sol.x = x;
      sol.p = p;
      return sol;
    }

    int steps = 0;
    bool ok = true;
    if (m_total == 0) {
      for (auto& xi : x) xi.setZero();  // unconstrained quadratic minimum
    } else {
      double t_bar = std::max(1.0, opts.t_start);
      for (;;) {
        const int before = steps;
        ok = center(t_bar, &steps);
        if (std::getenv("UGVBC_SOLVER_TRACE"))
          std::fprintf(stderr, "stage t=%.3e steps=%d obj=%.6f\n", t_bar,
                       steps - before, objective_value(sp, x, p));
        if (!ok) break;
        const double obj = objective_value(sp, x, p);
        const double t_needed = static_cast<double>(m_total) /
                                (opts.tolerance * std::max(1.0, std::abs(obj)));
        if (t_bar >= t_needed * (1.0 - 1e-9)) {
          // Final polish: re-center tightly so the stationarity residual
          // lands well inside the reported tolerance.
          ok = center(t_bar, &steps, 6);
          break;
        }
        // Land exactly on the certifying weight instead of overshooting
        // into the regime where t*f0 exhausts double precision.
        t_bar = std::min(t_bar * kMu, t_needed);
      }
      // KKT stationarity with the implicit multipliers 1/(t(-f_i)) equals the
      // final barrier gradient over t; reuse the assembled direction data.
      const double lambda2 = newton_direction(t_bar);
      double gnorm = 0.0;
      for (int b = 0; b < nb; ++b) gnorm = std::max(gnorm, gradx[b].lpNorm<Eigen::Infinity>());
      if (np > 0) gnorm = std::max(gnorm, gradp.lpNorm<Eigen::Infinity>());
      sol.kkt_residual = gnorm / t_bar;
      sol.multipliers = dual_multipliers(sp, x, p, t_bar);
      (void)lambda2;
    }

    sol.x = x;
    sol.p = p;
    sol.objective = objective_value(sp, x, p);
    sol.max_violation = max_violation(sp, x, p, nullptr);
    sol.newton_steps = steps;
    sol.converged = ok;
    if (!ok) sol.error = "max-iterations";
    return sol;
  }
};

// ---------------------------------------------------------------------------
// Dense epigraph route: each mixed constraint gets a slack s with
//   || (2 sqrt(s_scale) F x, 2 sqrt(c1), s - p) ||_2 <= s + p       (SOC)
//   s + (ra.x)^2 + (rb.x)^2 + g.x + e <= 0
// Small instances only; used as an independent cross-check of the
// quadratic-over-linear barrier.
// ---------------------------------------------------------------------------

struct DenseProblem {
  const Subproblem& sp;
  int dim, nb, np, ns;
  int n;  // total variables: nb*dim + np + ns
  struct SocRow {
    int block, cell, slack;  // cell < 0 => fixed p
    double fixed_p, s_scale, c1;
  };
  struct TailRow {
    int block, slack;
    const MixedConstraint* mc;
  };
  std::vector<SocRow> socs;
  std::vector<TailRow> tails;

  explicit DenseProblem(const Subproblem& s)
      : sp(s), dim(s.block_dim), nb(static_cast<int>(s.blocks.size())),
        np(static_cast<int>(s.pvars.size())) {
    ns = 0;
    for (int b = 0; b < nb; ++b)
      for (const auto& mc : sp.blocks[b].mixed) {
        socs.push_back({b, sp.blocks[b].cell, ns, mc.fixed_p, mc.s_scale, mc.c1});
        tails.push_back({b, ns, &mc});
        ++ns;
      }
    n = nb * dim + np + ns;
  }

  int xoff(int b) const { return b * dim; }
  int poff(int m) const { return nb * dim + m; }
  int soff(int j) const { return nb * dim + np + j; }

  double pval(const SocRow& r, const Eigen::VectorXd& z) const {
    return r.cell >= 0 ? z[poff(r.cell)] : r.fixed_p;
  }

  double f0(const Eigen::VectorXd& z) const {
    double v = 0.0;
    for (int b = 0; b < nb; ++b) v += z.segment(xoff(b), dim).squaredNorm();
    for (int m = 0; m < np; ++m) v += sp.pvars[m].cost * z[poff(m)];
    return v;
  }

  // Appends -log(-f) style terms; returns false when outside the domain.
  bool accumulate(const Eigen::VectorXd& z, double t_bar, double* phi,
                  Eigen::VectorXd* grad, Eigen::MatrixXd* hessian) const {
    if (phi) *phi = t_bar * f0(z);
    if (grad) {
      grad->setZero(n);
      for (int b = 0; b < nb; ++b)
        grad->segment(xoff(b), dim) = 2.0 * t_bar * z.segment(xoff(b), dim);
      for (int m = 0; m < np; ++m) (*grad)[poff(m)] += t_bar * sp.pvars[m].cost;
    }
    if (hessian) {
      hessian->setZero(n, n);
      for (int b = 0; b < nb; ++b)
        hessian->block(xoff(b), xoff(b), dim, dim).diagonal().array() +=
            2.0 * t_bar;
    }

    auto add_log = [&](double f, const Eigen::VectorXd& gf,
                       const Eigen::MatrixXd* hf) {
      if (f >= 0.0) return false;
      const double inv = 1.0 / (-f);
      if (phi) *phi -= std::log(-f);
      if (grad) grad->noalias() += inv * gf;
      if (hessian) {
        hessian->noalias() += (inv * inv) * (gf * gf.transpose());
        if (hf) hessian->noalias() += inv * (*hf);
      }
      return true;
    };

    Eigen::VectorXd gf(n);
    Eigen::MatrixXd hf(n, n);
    for (int b = 0; b < nb; ++b) {
      const WBlock& blk = sp.blocks[b];
      const auto xb = z.segment(xoff(b), dim);
      for (const auto& lc : blk.linear) {
        gf.setZero();
        gf.segment(xoff(b), dim) = lc.a;
        if (!add_log(lc.b + lc.a.dot(xb), gf, nullptr)) return false;
      }
      for (double cap : blk.norm_caps) {
        gf.setZero();
        gf.segment(xoff(b), dim) = 2.0 * xb;
        hf.setZero();
        hf.block(xoff(b), xoff(b), dim, dim).diagonal().setConstant(2.0);
        if (!add_log(xb.squaredNorm() - cap, gf, &hf)) return false;
      }
    }
    for (const auto& tr : tails) {
      const auto xb = z.segment(xoff(tr.block), dim);
      const double rav = tr.mc->ra.dot(xb), rbv = tr.mc->rb.dot(xb);
      const double f = z[soff(tr.slack)] + rav * rav + rbv * rbv +
                       tr.mc->g.dot(xb) + tr.mc->e;
      gf.setZero();
      gf.segment(xoff(tr.block), dim) =
          2.0 * rav * tr.mc->ra + 2.0 * rbv * tr.mc->rb + tr.mc->g;
      gf[soff(tr.slack)] = 1.0;
      hf.setZero();
      hf.block(xoff(tr.block), xoff(tr.block), dim, dim) =
          2.0 * tr.mc->ra * tr.mc->ra.transpose() +
          2.0 * tr.mc->rb * tr.mc->rb.transpose();
      if (!add_log(f, gf, &hf)) return false;
    }
    for (const auto& sr : socs) {
      // D = (s+p)^2 - ||u||^2 with u = (2 sqrt(s_scale) F x, 2 sqrt(c1), s-p).
      const auto xb = z.segment(xoff(sr.block), dim);
      const double s = z[soff(sr.slack)];
      const double pv = pval(sr, z);
      Eigen::VectorXd fx = sp.s0_factor * xb;  // ||fx||^2 = x' s0 x
      const double u2 =
          4.0 * sr.s_scale * fx.squaredNorm() + 4.0 * sr.c1 + (s - pv) * (s - pv);
      const double d = (s + pv) * (s + pv) - u2;  // = 4(s p - q(x))
      if (d <= 0.0 || s + pv <= 0.0) return false;
      if (phi) *phi -= std::log(d);
      if (grad || hessian) {
        // dD/dx = -8 s_scale F'F x; dD/ds = 2(s+p) - 2(s-p) = 4p (when p var:
        // dD/dp = 2(s+p) + 2(s-p) = 4s).
        gf.setZero();
        gf.segment(xoff(sr.block), dim) = -8.0 * sr.s_scale * (sp.s0 * xb);
        gf[soff(sr.slack)] = 4.0 * pv;
        if (sr.cell >= 0) gf[poff(sr.cell)] = 4.0 * s;
        if (grad) grad->noalias() += (-1.0 / d) * gf;
        if (hessian) {
          hf.setZero();
          hf.block(xoff(sr.block), xoff(sr.block), dim, dim) =
              -8.0 * sr.s_scale * sp.s0;
          if (sr.cell >= 0) {
            hf(soff(sr.slack), poff(sr.cell)) = 4.0;
            hf(poff(sr.cell), soff(sr.slack)) = 4.0;
          }
          // hess(-log D) = gD gD^T / D^2 - hD / D
          hessian->noalias() += (1.0 / (d * d)) * (gf * gf.transpose());
          hessian->noalias() -= (1.0 / d) * hf;
        }
      }
    }
    for (int m = 0; m < np; ++m) {
      gf.setZero();
      gf[poff(m)] = -1.0;
      if (!add_log(sp.pvars[m].lower - z[poff(m)], gf, nullptr)) return false;
      gf[poff(m)] = 1.0;
      if (!add_log(z[poff(m)] - sp.pvars[m].upper, gf, nullptr)) return false;
    }
    if (sp.budget_coeff.size() > 0) {
      gf.setZero();
      gf.segment(poff(0), np) = sp.budget_coeff;
      if (!add_log(sp.budget_coeff.dot(z.segment(poff(0), np)) - sp.budget_limit,
                   gf, nullptr))
        return false;
    }
    return true;
  }
};

Solution solve_epigraph(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x0,
                        const Eigen::VectorXd& p0, const Options& opts) {
  Solution sol;
  DenseProblem dp(sp);
  Eigen::VectorXd z(dp.n);
  for (int b = 0; b < dp.nb; ++b) z.segment(dp.xoff(b), dp.dim) = x0[b];
  for (int m = 0; m < dp.np; ++m) z[dp.poff(m)] = p0[m];
  // Slack init: midway between the epigraph floor q/p and the tail ceiling.
  int j = 0;
  for (int b = 0; b < dp.nb; ++b) {
    const auto& blk = sp.blocks[b];
    for (const auto& mc : blk.mixed) {
      const double pv = blk.cell >= 0 ? p0[blk.cell] : mc.fixed_p;
      double q = mc.c1;
      if (mc.s_scale != 0.0) q += mc.s_scale * x0[b].dot(sp.s0 * x0[b]);
      const double rav = mc.ra.dot(x0[b]), rbv = mc.rb.dot(x0[b]);
      const double ceiling = -(rav * rav + rbv * rbv + mc.g.dot(x0[b]) + mc.e);
      const double floor_s = q / pv;
      if (floor_s >= ceiling) {
        sol.error = "infeasible: mixed constraint at hint (epigraph)";
        sol.max_violation = floor_s - ceiling;
        return sol;
      }
      z[dp.soff(j)] = 0.5 * (floor_s + ceiling);
      ++j;
    }
  }

  double phi;
  if (!dp.accumulate(z, 1.0, &phi, nullptr, nullptr)) {
    sol.error = "infeasible: hint outside barrier domain (epigraph)";
    return sol;
  }

  const long m_total = count_constraints(sp) + dp.ns;  // SOC + tail per mixed
  double t_bar = std::max(1.0, opts.t_start);
  int steps = 0;
  bool ok = true;
  Eigen::VectorXd grad(dp.n), dz(dp.n);
  Eigen::MatrixXd hess(dp.n, dp.n);
  for (;;) {
    for (;;) {
      if (steps >= opts.max_newton) {
        ok = false;
        break;
      }
      dp.accumulate(z, t_bar, &phi, &grad, &hess);
      dz = -hess.ldlt().solve(grad);
      const double lambda2 = -grad.dot(dz);
      if (lambda2 / 2.0 < kInnerTol) break;
      ++steps;
      double step = 1.0;
      const bool quadratic_region = lambda2 < 0.05;
      for (int tries = 0; tries < 90; ++tries) {
        double phi_new;
        Eigen::VectorXd zn = z + step * dz;
        // Inside the quadratic region only feasibility is checked; the
        // guaranteed decrease can be below the fp granularity of t*f0.
        if (dp.accumulate(zn, t_bar, &phi_new, nullptr, nullptr) &&
            (quadratic_region || phi_new <= phi - 0.01 * step * lambda2)) {
          z = zn;
          break;
        }
        step *= 0.5;
        if (step < 1e-16) break;
      }
      if (step < 1e-16) break;
    }
    if (!ok) break;
    const double obj = dp.f0(z);
    if (static_cast<double>(m_total) / t_bar <=
        opts.tolerance * std::max(1.0, std::abs(obj)))
      break;
    t_bar *= kMu;
  }

  sol.x.resize(dp.nb);
  for (int b = 0; b < dp.nb; ++b) sol.x[b] = z.segment(dp.xoff(b), dp.dim);
  sol.p.resize(dp.np);
  for (int m = 0; m < dp.np; ++m) sol.p[m] = z[dp.poff(m)];
  sol.objective = dp.f0(z);
  sol.max_violation = max_violation(sp, sol.x, sol.p, nullptr);
  dp.accumulate(z, t_bar, &phi, &grad, nullptr);
  sol.kkt_residual = grad.lpNorm<Eigen::Infinity>() / t_bar;
  sol.newton_steps = steps;
  sol.converged = ok;
  if (!ok) sol.error = "max-iterations";
  return sol;
}

}  // namespace

Solution solve(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x0,
               const Eigen::VectorXd& p0, const Options& opts) {
  if (opts.use_epigraph) return solve_epigraph(sp, x0, p0, opts);
  StructuredSolver solver(sp, opts, x0, p0);
  return solver.run();
}

}  // namespace ugvbc::convex

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ugvbc::convex {

// Convex subproblems of the per-iteration beamforming/power program:
// variables are one real vector x_t per tag (stacked Re/Im of w) and one
// scalar p_m per cell; the objective is Sum ||x_t||^2 + Sum cost_m p_m.
// Every constraint family below is convex by construction (the
// quadratic-over-linear numerator is PSD and p is kept above its floor).

// b + a.x <= 0
struct LinearConstraint {
  Eigen::VectorXd a;
  double b = 0.0;
};

// (s_scale * x'S0 x + c1)/p + (ra.x)^2 + (rb.x)^2 + g.x + e <= 0
// p is the block's coupled p variable, or the constant fixed_p when the
// block has no cell (per-tag subproblems with preset reader power).
struct MixedConstraint {
  double s_scale = 0.0;
  double c1 = 0.0;
  Eigen::VectorXd ra, rb;
  Eigen::VectorXd g;
  double e = 0.0;
  double fixed_p = 1.0;
};

struct WBlock {
  int cell = -1;  // index of the coupled p variable, -1 when none
  std::vector<LinearConstraint> linear;
  std::vector<double> norm_caps;  // ||x||^2 <= cap
  std::vector<MixedConstraint> mixed;
};

struct PVar {
  double lower = 0.0;
  double upper = 0.0;
  double cost = 0.0;
};

struct Subproblem {
  int block_dim = 0;          // 2 * L_T
  Eigen::MatrixXd s0;         // shared PSD base of the mixed numerators
  Eigen::MatrixXd s0_factor;  // F with F^T F = s0 (epigraph route)
  std::vector<WBlock> blocks;
  std::vector<PVar> pvars;
  Eigen::VectorXd budget_coeff;  // budget_coeff.p <= budget_limit; empty => none
  double budget_limit = 0.0;
};

struct Options {
  double tolerance = 1e-8;
  int max_newton = 800;
  // Barrier weight to start the continuation from; warm starts near the
  // solution may begin higher to skip early centering stages.
  double t_start = 1.0;
  // Replaces each mixed constraint by an epigraph slack plus a second-order
  // cone row; slower dense path kept as an independent cross-check.
  bool use_epigraph = false;
};

struct Solution {
  std::vector<Eigen::VectorXd> x;
  Eigen::VectorXd p;
  double objective = 0.0;
  double kkt_residual = 0.0;
  double max_violation = 0.0;  // max_i f_i at the returned point
  // Implicit dual variables 1/(t(-f_i)), ordered per block (linear, caps,
  // mixed), then per p variable (lower, upper), then the budget row.
  Eigen::VectorXd multipliers;
  int newton_steps = 0;
  bool converged = false;
  std::string error;  // "infeasible: <worst constraint>" | "max-iterations"
};

// Barrier interior-point solve. The hint (x0, p0) must be strictly feasible;
// otherwise an "infeasible" report naming the most violated constraint is
// returned. Deterministic for identical inputs.
Solution solve(const Subproblem& sp, const std::vector<Eigen::VectorXd>& x0,
               const Eigen::VectorXd& p0, const Options& opts = {});

}  // namespace ugvbc::convex

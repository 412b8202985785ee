#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ugvbc/config.hpp"
#include "ugvbc/types.hpp"

namespace ugvbc {

// Planning output: layer count, cell radius, spiral layout and the
// transmission-energy budget left after motion and circuit consumption.
struct HexPlan {
  int layers = 0;             // K*
  double radius = 0.0;        // r*, m
  long cells = 0;             // M = 3K^2 + 3K
  double tags_per_cell = 0.0; // I from the area formula (real-valued)
  int tags_per_cell_int = 0;  // rounded to nearest integer >= 1 (0 iff lambda == 0)
  std::vector<int> cell_layer;      // k_m, 1-based cells stored at [m-1]
  std::vector<double> cell_distance;// d_m = sqrt(3 r^2 k_m^2 + d_AP^2)
  std::vector<long> trajectory;     // spiral visiting order, 1..M
  double motion_time = 0.0;   // t(K*), sub-slots
  double block_length = 0.0;  // T = t + lambda*S, sub-slots
  double tx_energy_budget = 0.0;  // C, J
};

// Scalars of the layer-count feasibility analysis. Where the published
// closed forms carry obvious typesetting slips, both the printed and the
// algebraically reconstructed value are kept so they can be compared against
// the exhaustive oracle.
struct PlanningBounds {
  bool small_area = false;  // S <= (3 sqrt(3)/2) d_AP^2
  double theta = 0.0;       // 10^(Theta/(5 alpha)) - 1
  double theta_prime = 0.0;
  double f0 = 0.0;          // energy headroom for motion time
  double f_upper = 0.0;     // F: t(K) < F0  <=>  K < F
  double g0 = 0.0;          // T_max - lambda S
  double g_upper = 0.0;     // G
  double k_a = 0.0;         // upper edge of the max-at-K regime
  double k_a_printed = 0.0;
  double k_b = 0.0;         // lower bound from the farthest-point inequality
  double delta_a = 0.0;
  double k_i = 0.0;         // lower bound from the nearest-point inequality
  double delta_1 = 0.0;
  double k_ii = 0.0;        // upper edge of the nearest-point max-at-K regime
  double k_ii_printed = 0.0;
  double xi_a = 0.0;
  double xi_i = 0.0;
  double k_x = 0.0;         // layer bound from xi_a, sqrt(12 xi_a - 3)/6 - 1/2
  double k_y = 0.0;         // layer bound from xi_i
};

// Which reading of the K_II regime-edge formula the closed form uses; the
// printed form is the default, the dimensionally consistent sqrt reading is
// kept for comparison (see oracle-check). Both agree with the exhaustive
// oracle on the acceptance sweep.
enum class BoundVariant {
  printed,    // K_II exactly as printed (no inner square root)
  corrected,  // K_II with the inner square root restored
};

// k_m = ceil(sqrt(12m + 6)/6 - 1/2): layer of the m-th cell on the spiral.
int layer_index(long m);

// M = 3K^2 + 3K.
long cell_count(int layers);

// r(K) = sqrt(2S / (3 sqrt(3) (3K^2 + 3K + 1))).
double radius_from_layers(int layers, double area);

// t(K) = (3K^2+3K)/nu * sqrt(2S / (sqrt(3)(3K^2+3K+1))), strictly increasing.
double motion_time(int layers, double area, double speed);

// d_m = sqrt(3 r^2 k_m^2 + d_AP^2).
double ap_distance(long m, double radius, double ap_height);

Result<PlanningBounds> planning_bounds(const ScenarioConfig& config);

// Closed-form K* (layer-count theorem). Errors with "no-feasible-K" when the
// feasible domain has no positive integer.
Result<int> optimal_layers(const ScenarioConfig& config,
                           BoundVariant variant = BoundVariant::printed);

// Exhaustive oracle: smallest K <= 200 for which the motion-time, block-length
// and exact per-layer path-loss tolerance checks all hold.
Result<int> brute_force_layers(const ScenarioConfig& config);

// Exact tolerance check used by the oracle, exposed for tests: true iff layer
// k at radius r keeps both the farthest- and nearest-point path-loss gaps
// within Theta.
bool layer_tolerance_ok(int k, double radius, const ScenarioConfig& config);

Result<HexPlan> plan(const ScenarioConfig& config,
                     BoundVariant variant = BoundVariant::printed);

// Plan built around an externally chosen K (shared by plan() and the tests).
HexPlan plan_with_layers(const ScenarioConfig& config, int layers);

std::string describe(const HexPlan& plan);
std::string trajectory_csv(const HexPlan& plan);

}  // namespace ugvbc

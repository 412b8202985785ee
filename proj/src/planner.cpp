#include "ugvbc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ugvbc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kIntGuard = 1e-9;  // absorbs float noise at integer edges
constexpr int kLayerCap = 200;      // planning beyond this is out of regime

double ceil_guarded(double x) { return std::ceil(x - kIntGuard); }
double floor_guarded(double x) { return std::floor(x + kIntGuard); }

double kappa(int layers) { return 3.0 * layers * (layers + 1.0) + 1.0; }

// Inverse of t(K) = c at the motion-time level c, from the quadratic in
// 3K^2 + 3K obtained by squaring t.
double motion_time_inverse(double level, double area, double speed) {
  const double s = area, v = speed, c = level;
  const double inner = 3.0 * v * v * c * c / (4.0 * s * s) + 2.0 * kSqrt3 / s;
  const double root =
      9.0 + 3.0 * kSqrt3 * v * v * c * c / s + 6.0 * v * c * std::sqrt(inner);
  return std::sqrt(root) / 6.0 - 0.5;
}

struct IntInterval {
  long lo = 1;
  long hi = 0;  // empty when hi < lo
  bool empty() const { return hi < lo; }
  bool intersects(const IntInterval& other) const {
    return std::max(lo, other.lo) <= std::min(hi, other.hi);
  }
};

}  // namespace

int layer_index(long m) {
  return static_cast<int>(std::ceil(std::sqrt(12.0 * m + 6.0) / 6.0 - 0.5));
}

long cell_count(int layers) { return 3L * layers * layers + 3L * layers; }

double radius_from_layers(int layers, double area) {
  return std::sqrt(2.0 * area / (3.0 * kSqrt3 * kappa(layers)));
}

double motion_time(int layers, double area, double speed) {
  const double cells = static_cast<double>(cell_count(layers));
  return cells / speed * std::sqrt(2.0 * area / (kSqrt3 * kappa(layers)));
}

double ap_distance(long m, double radius, double ap_height) {
  const double k = layer_index(m);
  return std::sqrt(3.0 * radius * radius * k * k + ap_height * ap_height);
}

Result<PlanningBounds> planning_bounds(const ScenarioConfig& c) {
  PlanningBounds b;
  const double s = c.coverage_area;
  const double d2 = c.ap_height * c.ap_height;
  const double beta = std::pow(10.0, c.pathloss_tolerance /
                                         (5.0 * c.pathloss_exponent));
  b.theta = beta - 1.0;
  b.theta_prime = (1.0 - beta) * (1.0 - beta) / ((1.0 + beta) * (1.0 + beta));
  b.small_area = s <= 1.5 * kSqrt3 * d2;

  b.f0 = (c.ugv_energy_max - c.tag_density * s * c.circuit_power_reader) /
         (c.mobility_mu1 + c.mobility_mu2 * c.ugv_speed + c.circuit_power_reader);
  if (b.f0 <= 0.0)
    return Result<PlanningBounds>::failure("infeasible-energy");
  b.g0 = c.time_max - c.tag_density * s;
  if (b.g0 <= 0.0)
    return Result<PlanningBounds>::failure("infeasible-time");
  b.f_upper = motion_time_inverse(b.f0, s, c.ugv_speed);
  b.g_upper = motion_time_inverse(b.g0, s, c.ugv_speed);

  const double th = b.theta;

  // Farthest-point bound K_B: lower root region of the downward parabola; the
  // tolerance never binds below when S <= (3 sqrt3/2) theta d^2.
  if (s <= 1.5 * kSqrt3 * th * d2) {
    b.k_b = 0.0;
    b.delta_a = 0.0;
  } else {
    b.delta_a = std::pow(2.0 * s - 3.0 * kSqrt3 * th * d2, 2) +
                4.0 * th * (2.0 * s + 3.0 * kSqrt3 * d2) *
                    (2.0 * s / 3.0 - kSqrt3 * th * d2);
    b.k_b = (2.0 * s - 3.0 * kSqrt3 * th * d2 + std::sqrt(std::max(0.0, b.delta_a))) /
            (2.0 * th * (2.0 * s + 3.0 * kSqrt3 * d2));
  }

  // Nearest-point bound K_I.
  {
    const double a1 = th * (2.0 * s + 3.0 * kSqrt3 * d2);
    const double b1 = 2.0 * s * beta - 3.0 * kSqrt3 * th * d2;
    const double c1 = s * beta / 2.0 + kSqrt3 * th * d2;
    b.delta_1 = b1 * b1 - 4.0 * a1 * c1;
    b.k_i = b.delta_1 < 0.0 ? 0.0 : (b1 + std::sqrt(b.delta_1)) / (2.0 * a1);
  }

  // Regime edges K_A / K_II (interior-maximizer analysis); only meaningful
  // when S > (3 sqrt3/2) d^2.
  if (!b.small_area) {
    const double disc = 16.0 - 81.0 * d2 * d2 / (s * s);
    const double den = 12.0 * s - 18.0 * kSqrt3 * d2;
    const double root = std::sqrt(std::max(0.0, disc));
    b.k_a = (9.0 * kSqrt3 * d2 - 4.0 * s + s * root) / den;
    b.k_a_printed = (9.0 * kSqrt3 * d2 - 4.0 * s + root) / den;

    const double inner = 14.0 * kSqrt3 * s * d2 + s * s - 9.0 * d2 * d2;
    const double den2 = 4.0 * s - 6.0 * kSqrt3 * d2;
    b.k_ii = (3.0 * kSqrt3 * d2 + s + std::sqrt(std::max(0.0, inner))) / den2;
    b.k_ii_printed = (3.0 * kSqrt3 * d2 + s + inner) / den2;

    const double q = 2.0 * th + 3.0;
    b.xi_a = (2.0 * kSqrt3 * s * q * q +
              std::sqrt(12.0 * s * s * q * q * q * q +
                        576.0 * s * s * th * th * (4.0 * th + 3.0))) /
             (216.0 * d2 * th * th);
    b.xi_i = kSqrt3 * s * (1.0 - 2.0 * b.theta_prime) / (24.0 * d2 * b.theta_prime);

    b.k_x = 12.0 * b.xi_a >= 3.0 ? std::sqrt(12.0 * b.xi_a - 3.0) / 6.0 - 0.5 : 0.0;
    b.k_y = 12.0 * b.xi_i >= 3.0 ? std::sqrt(12.0 * b.xi_i - 3.0) / 6.0 - 0.5 : 0.0;
  }
  return Result<PlanningBounds>::success(b);
}

Result<int> optimal_layers(const ScenarioConfig& config, BoundVariant variant) {
  auto bounds = planning_bounds(config);
  if (!bounds.ok()) return Result<int>::failure(bounds.error);
  const PlanningBounds& b = *bounds;

  long k_star = 0;
  const long ceil_kb = static_cast<long>(ceil_guarded(b.k_b));
  const long ceil_ki = static_cast<long>(ceil_guarded(b.k_i));

  if (b.small_area) {
    k_star = std::max({1L, ceil_kb, ceil_ki});
    if (static_cast<double>(k_star) >
        std::min(b.f_upper, b.g_upper) + kIntGuard)
      return Result<int>::failure("no-feasible-K");
  } else {
    const double k_ii = variant == BoundVariant::printed ? b.k_ii_printed : b.k_ii;
    const long ceil_kx = static_cast<long>(ceil_guarded(b.k_x));
    const long ceil_ky = static_cast<long>(ceil_guarded(b.k_y));
    const IntInterval s0{std::max(1L, ceil_kb),
                         static_cast<long>(floor_guarded(b.k_a))};
    const IntInterval si{std::max(1L, ceil_ki),
                         static_cast<long>(floor_guarded(k_ii))};
    const IntInterval sx{std::max(1L, ceil_kx),
                         std::numeric_limits<long>::max() / 2};
    const IntInterval sy{std::max(1L, ceil_ky),
                         std::numeric_limits<long>::max() / 2};

    if (s0.intersects(si)) {
      k_star = std::max({1L, ceil_kb, ceil_ki});
    } else if (si.intersects(sx)) {
      k_star = std::max({1L, ceil_ki, ceil_kx});
    } else if (s0.intersects(sy)) {
      k_star = std::max({1L, ceil_kb, ceil_ky});
    } else {
      k_star = std::max({1L, ceil_kb,
                         static_cast<long>(ceil_guarded(k_ii)), ceil_kx, ceil_ky});
    }

    // Domain membership: the chosen K must clear both tolerance regimes and
    // the motion-time / block-length caps.
    const double k = static_cast<double>(k_star);
    const bool in_da = (k >= b.k_b - kIntGuard && k <= b.k_a + kIntGuard) ||
                       k >= std::max(b.k_a, b.k_x) - kIntGuard;
    const bool in_di = (k >= b.k_i - kIntGuard && k <= k_ii + kIntGuard) ||
                       k >= std::max(k_ii, b.k_y) - kIntGuard;
    const bool in_df = k >= 1.0 && k <= std::min(b.f_upper, b.g_upper) + kIntGuard;
    if (!(in_da && in_di && in_df))
      return Result<int>::failure("no-feasible-K");
  }

  if (k_star > kLayerCap) return Result<int>::failure("no-feasible-K");
  return Result<int>::success(static_cast<int>(k_star));
}

bool layer_tolerance_ok(int k, double radius, const ScenarioConfig& config) {
  const double beta = std::pow(10.0, config.pathloss_tolerance /
                                         (5.0 * config.pathloss_exponent));
  const double r2 = radius * radius;
  const double d2 = config.ap_height * config.ap_height;
  const double dm2 = 3.0 * r2 * k * k + d2;
  const double far2 = 3.0 * r2 * (k + 0.5) * (k + 0.5) + r2 / 4.0 + d2;
  const double near2 = 3.0 * r2 * (k - 0.5) * (k - 0.5) + d2;
  return far2 <= beta * dm2 && dm2 <= beta * near2;
}

Result<int> brute_force_layers(const ScenarioConfig& config) {
  const double s = config.coverage_area;
  const double f0 =
      (config.ugv_energy_max - config.tag_density * s * config.circuit_power_reader) /
      (config.mobility_mu1 + config.mobility_mu2 * config.ugv_speed +
       config.circuit_power_reader);
  if (f0 <= 0.0) return Result<int>::failure("infeasible-energy");
  const double g0 = config.time_max - config.tag_density * s;
  if (g0 <= 0.0) return Result<int>::failure("infeasible-time");

  for (int k_layers = 1; k_layers <= kLayerCap; ++k_layers) {
    const double t = motion_time(k_layers, s, config.ugv_speed);
    // t(K) grows with K, so once the timing caps fail no larger K can work.
    if (t >= f0 || t + config.tag_density * s > config.time_max)
      return Result<int>::failure("no-feasible-K");
    const double r = radius_from_layers(k_layers, s);
    bool ok = true;
    for (int k = 1; k <= k_layers && ok; ++k)
      ok = layer_tolerance_ok(k, r, config);
    if (ok) return Result<int>::success(k_layers);
  }
  return Result<int>::failure("no-feasible-K");
}

HexPlan plan_with_layers(const ScenarioConfig& config, int layers) {
  HexPlan p;
  p.layers = layers;
  p.radius = radius_from_layers(layers, config.coverage_area);
  p.cells = cell_count(layers);
  p.tags_per_cell = config.tag_density * config.coverage_area / kappa(layers);
  p.tags_per_cell_int =
      config.tag_density > 0.0
          ? std::max(1, static_cast<int>(std::llround(p.tags_per_cell)))
          : 0;
  p.cell_layer.resize(p.cells);
  p.cell_distance.resize(p.cells);
  p.trajectory.resize(p.cells);
  for (long m = 1; m <= p.cells; ++m) {
    p.cell_layer[m - 1] = layer_index(m);
    p.cell_distance[m - 1] = ap_distance(m, p.radius, config.ap_height);
    p.trajectory[m - 1] = m;
  }
  p.motion_time = motion_time(layers, config.coverage_area, config.ugv_speed);
  p.block_length = p.motion_time + config.tag_density * config.coverage_area;
  const double dt = config.sub_slot_duration;
  p.tx_energy_budget =
      config.ugv_energy_max -
      ((config.mobility_mu1 + config.mobility_mu2 * config.ugv_speed) *
           p.motion_time +
       p.block_length * config.circuit_power_reader) *
          dt;
  return p;
}

Result<HexPlan> plan(const ScenarioConfig& config, BoundVariant variant) {
  auto layers = optimal_layers(config, variant);
  if (!layers.ok()) return Result<HexPlan>::failure(layers.error);
  HexPlan p = plan_with_layers(config, *layers);
  if (p.tx_energy_budget < 0.0)
    return Result<HexPlan>::failure("negative-budget");
  return Result<HexPlan>::success(std::move(p));
}

std::string describe(const HexPlan& p) {
  std::ostringstream out;
  out.precision(6);
  out << "K* = " << p.layers << "\n"
      << "r* = " << p.radius << " m\n"
      << "M  = " << p.cells << " cells\n"
      << "I  = " << p.tags_per_cell << " tags/cell (simulated as "
      << p.tags_per_cell_int << ")\n"
      << "t  = " << p.motion_time << " sub-slots motion\n"
      << "T  = " << p.block_length << " sub-slots block length\n"
      << "C  = " << p.tx_energy_budget << " J transmission budget\n"
      << "trajectory: spiral 1.." << p.cells << "\n";
  return out.str();
}

std::string trajectory_csv(const HexPlan& p) {
  std::ostringstream out;
  out.precision(12);
  out << "cell,layer,distance\n";
  for (long m = 1; m <= p.cells; ++m)
    out << m << ',' << p.cell_layer[m - 1] << ',' << p.cell_distance[m - 1]
        << "\n";
  return out.str();
}

}  // namespace ugvbc

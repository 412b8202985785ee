#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ugvbc {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class Mode { hd, fd };

inline const char* mode_name(Mode m) { return m == Mode::hd ? "hd" : "fd"; }

// Lightweight value-or-error carrier. The error string is a stable
// machine-readable code ("no-feasible-K", "negative-budget", ...), optionally
// followed by ": detail".
template <typename T>
struct Result {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  static Result success(T v) { return Result{std::move(v), {}}; }
  static Result failure(std::string code) { return Result{std::nullopt, std::move(code)}; }
};

// Decomposed network energies for one trial, in Joules, plus the achieved
// per-tag rates. `total` is always the sum of the five components.
struct EnergyReport {
  double ugv_motion = 0.0;
  double reader_tx = 0.0;
  double reader_circuit = 0.0;
  double ap_tx = 0.0;
  double ap_circuit = 0.0;
  double total = 0.0;
  std::vector<std::vector<double>> rates;  // [cell][tag], bps/Hz, 0 for skipped

  double component_sum() const {
    return ugv_motion + reader_tx + reader_circuit + ap_tx + ap_circuit;
  }
};

// Beamformers, combiners and reader powers for one channel draw.
// HD stores one combiner per cell, FD one per tag. Tags that cannot meet the
// rate constraint are skipped and carry no beamformer.
struct Allocation {
  Mode mode = Mode::hd;
  std::string algorithm;

  std::vector<std::vector<CVector>> w;       // [cell][tag] Tx beamformer
  std::vector<CVector> v_cell;               // HD: unit-norm combiner per cell
  std::vector<std::vector<CVector>> v_tag;   // FD: unit-norm combiner per tag
  Eigen::VectorXd p;                         // reader Tx power per cell, W

  std::vector<std::vector<uint8_t>> skipped; // per-tag infeasibility flag
  std::vector<uint8_t> cell_skipped;
  std::vector<std::string> cell_flag;        // reason for a skipped cell
  bool budget_exceeded = false;

  int sca_iterations = 0;
  bool sca_stalled = false;
  std::vector<double> objective_history;     // SCA only

  // Transmit-side objective Sum||w||^2 + I*Sum p over served tags/cells.
  double objective = 0.0;

  std::size_t served_tags() const {
    std::size_t n = 0;
    for (const auto& cell : skipped)
      for (uint8_t s : cell)
        if (!s) ++n;
    return n;
  }
  std::size_t total_tags() const {
    std::size_t n = 0;
    for (const auto& cell : skipped) n += cell.size();
    return n;
  }
};

// [Re w; Im w] stacking used by the convex solver and its tests.
inline Eigen::VectorXd to_real(const CVector& w) {
  Eigen::VectorXd x(2 * w.size());
  x.head(w.size()) = w.real();
  x.tail(w.size()) = w.imag();
  return x;
}

inline CVector to_complex(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size() / 2;
  CVector w(n);
  w.real() = x.head(n);
  w.imag() = x.tail(n);
  return w;
}

// Real 2n-vector a with a.dot(x) == Re{u^H w}, x = to_real(w).
inline Eigen::VectorXd re_inner_vector(const CVector& u) {
  Eigen::VectorXd a(2 * u.size());
  a.head(u.size()) = u.real();
  a.tail(u.size()) = u.imag();
  return a;
}

// Real 2n-vector b with b.dot(x) == Im{u^H w}.
inline Eigen::VectorXd im_inner_vector(const CVector& u) {
  Eigen::VectorXd b(2 * u.size());
  b.head(u.size()) = -u.imag();
  b.tail(u.size()) = u.real();
  return b;
}

// Real representation of a complex matrix: ||RR(Q) x||^2 == ||Q w||^2.
inline Eigen::MatrixXd real_rep(const CMatrix& q) {
  const Eigen::Index r = q.rows(), c = q.cols();
  Eigen::MatrixXd m(2 * r, 2 * c);
  m.topLeftCorner(r, c) = q.real();
  m.topRightCorner(r, c) = -q.imag();
  m.bottomLeftCorner(r, c) = q.imag();
  m.bottomRightCorner(r, c) = q.real();
  return m;
}

}  // namespace ugvbc

#include "ugvbc/channel.hpp"

#include <cmath>
#include <sstream>

namespace ugvbc {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective avalanche mix.
uint64_t mix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

enum Field : uint64_t { kFieldG = 1, kFieldF = 2, kFieldH = 3, kFieldQ = 4 };

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

CounterRng::CounterRng(uint64_t master_seed, uint64_t trial, uint64_t cell,
                       uint64_t tag, uint64_t field) {
  uint64_t h = mix64(master_seed);
  h = mix64(h ^ (trial + kGolden));
  h = mix64(h ^ (cell + 2 * kGolden));
  h = mix64(h ^ (tag + 3 * kGolden));
  h = mix64(h ^ (field + 4 * kGolden));
  base_ = h;
}

double CounterRng::uniform() {
  const uint64_t bits = mix64(base_ + counter_++ * kGolden);
  // (0,1]: never returns 0, so log() below is safe.
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

cdouble CounterRng::complex_gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-std::log(u1));  // E[radius^2] = 1
  return {radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

Result<ChannelSet> sample_channels(uint64_t seed, const HexPlan& plan,
                                   const ScenarioConfig& config, Mode mode,
                                   uint64_t trial, double si_scale) {
  int len_f = config.antennas, len_h = config.antennas;
  if (mode == Mode::fd) {
    if (config.antennas % 2 != 0)
      return Result<ChannelSet>::failure("odd antenna count in fd mode");
    if (config.tx_antennas != config.rx_antennas ||
        config.tx_antennas * 2 != config.antennas)
      return Result<ChannelSet>::failure(
          "fd mode requires tx_antennas == rx_antennas == antennas/2");
    len_f = config.tx_antennas;
    len_h = config.rx_antennas;
  }

  const long cells = plan.cells;
  const int tags = plan.tags_per_cell_int;
  ChannelSet cs;
  cs.g.resize(cells);
  cs.f.resize(cells);
  cs.h.resize(cells);
  for (long m = 1; m <= cells; ++m) {
    cs.g[m - 1].resize(tags);
    cs.f[m - 1].resize(tags);
    for (int i = 1; i <= tags; ++i) {
      CounterRng rng_g(seed, trial, m, i, kFieldG);
      cs.g[m - 1][i - 1] = rng_g.complex_gaussian();
      CounterRng rng_f(seed, trial, m, i, kFieldF);
      CVector f(len_f);
      for (int l = 0; l < len_f; ++l) f[l] = rng_f.complex_gaussian();
      cs.f[m - 1][i - 1] = std::move(f);
    }
    CounterRng rng_h(seed, trial, m, 0, kFieldH);
    CVector h(len_h);
    for (int l = 0; l < len_h; ++l) h[l] = rng_h.complex_gaussian();
    cs.h[m - 1] = std::move(h);
  }
  if (mode == Mode::fd) {
    CounterRng rng_q(seed, trial, 0, 0, kFieldQ);
    cs.q_si.resize(len_h, len_f);
    for (int r = 0; r < len_h; ++r)
      for (int c = 0; c < len_f; ++c)
        cs.q_si(r, c) = si_scale * rng_q.complex_gaussian();
  }
  return Result<ChannelSet>::success(std::move(cs));
}

std::string channel_dump_csv(const ChannelSet& cs, uint64_t trial) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,cell,tag,field,index,re,im\n";
  auto row = [&](long m, int i, const char* field, int idx, cdouble v) {
    out << trial << ',' << m << ',' << i << ',' << field << ',' << idx << ','
        << v.real() << ',' << v.imag() << "\n";
  };
  for (std::size_t m = 0; m < cs.g.size(); ++m) {
    for (std::size_t i = 0; i < cs.g[m].size(); ++i) {
      row(m + 1, i + 1, "g", 0, cs.g[m][i]);
      for (Eigen::Index l = 0; l < cs.f[m][i].size(); ++l)
        row(m + 1, i + 1, "f", static_cast<int>(l), cs.f[m][i][l]);
    }
    for (Eigen::Index l = 0; l < cs.h[m].size(); ++l)
      row(m + 1, 0, "h", static_cast<int>(l), cs.h[m][l]);
  }
  for (Eigen::Index r = 0; r < cs.q_si.rows(); ++r)
    for (Eigen::Index c = 0; c < cs.q_si.cols(); ++c)
      row(0, 0, "q", static_cast<int>(r * cs.q_si.cols() + c), cs.q_si(r, c));
  return out.str();
}

}  // namespace ugvbc

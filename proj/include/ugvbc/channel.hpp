#pragma once

#include <cstdint>
#include <string>

#include "ugvbc/planner.hpp"
#include "ugvbc/types.hpp"

namespace ugvbc {

// One Monte-Carlo draw of all fading coefficients. Entries are i.i.d.
// circularly symmetric complex Gaussian CN(0,1). In HD mode f and h have
// length L and q_si is empty; in FD mode f has length L_T, h has length L_R
// and q_si is L_R x L_T.
struct ChannelSet {
  std::vector<std::vector<cdouble>> g;       // [cell][tag] tag -> reader
  std::vector<std::vector<CVector>> f;       // [cell][tag] AP -> tag
  std::vector<CVector> h;                    // [cell] reader -> AP
  CMatrix q_si;                              // self-interference (FD only)
};

// Stateless counter generator: every value is a pure function of
// (master seed, stream labels, counter), so draws are identical regardless
// of evaluation order or worker count.
class CounterRng {
 public:
  CounterRng(uint64_t master_seed, uint64_t trial, uint64_t cell, uint64_t tag,
             uint64_t field);

  double uniform();          // in (0,1]
  cdouble complex_gaussian();  // CN(0,1)

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

Result<ChannelSet> sample_channels(uint64_t seed, const HexPlan& plan,
                                   const ScenarioConfig& config, Mode mode,
                                   uint64_t trial = 0, double si_scale = 1.0);

// CSV of complex pairs (trial,cell,tag,field,index,re,im) for
// cross-implementation regression.
std::string channel_dump_csv(const ChannelSet& channels, uint64_t trial);

}  // namespace ugvbc

#pragma once

#include <string>
#include <vector>

namespace ugvbc {

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast built-in invariant suite backing the `selftest` CLI subcommand.
std::vector<SelftestResult> run_selftest();

}  // namespace ugvbc

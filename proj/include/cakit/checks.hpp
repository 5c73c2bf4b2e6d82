#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cakit {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// The full corpus verification: rank formulas, Loewy structures, extension
/// audits, division-algebra criteria, the Lie constructions and the BCH group
/// law, each with its pinned tolerances. `level` is the Z/2^k level for the
/// extension checks, `seed` drives every sampler.
std::vector<CheckResult> run_full_checks(int level, uint64_t seed);

} // namespace cakit

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gspc/common.hpp"

namespace gspc {

struct SelfcheckOptions {
  int n_max = 12;
  std::uint64_t seed = 1;
  /// Random digraphs per size.
  int random_per_size = 3;
  Tolerances tol;
};

struct CheckEntry {
  std::string suite;
  std::string label;
  std::string metric;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  /// Set when the case threw instead of producing a value.
  std::string error;
};

struct SelfcheckReport {
  SelfcheckOptions options;
  std::vector<CheckEntry> entries;

  int failures() const;
  /// Deterministic JSON text (no timings).
  std::string to_json() const;
};

/// Invariant suites on cycles N = 2..n_max, ladders up to n_max vertices and
/// seeded random digraphs with 3..n_max vertices.
SelfcheckReport run_selfcheck(const SelfcheckOptions& opts = {});

}  // namespace gspc

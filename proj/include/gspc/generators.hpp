#pragma once

#include <random>

#include "gspc/graph_model.hpp"

namespace gspc {

/// Directed cycle 0 -> 1 -> ... -> N-1 -> 0 (the DSP time shift).
ShiftGraph cycle_graph(int n);

/// Directed ladder with n = 2K vertices. Top rail 0 -> ... -> K-1, bottom
/// rail 2K-1 -> ... -> K, rung K -> 0 and rungs j -> K+j for j = 1..K-1.
/// Characteristic polynomial x^{2K} - sum_{m=0}^{K-2} x^{2m}.
ShiftGraph ladder_graph(int n);

struct RandomGraphOptions {
  double edge_prob = 0.3;
  double min_gap = 1e-3;
  bool require_nonzero_eigenvalues = false;
  int max_attempts = 10000;
};

/// Erdos-Renyi digraph without self loops, regenerated until it is strongly
/// connected and its eigenvalues are separated by more than min_gap.
ShiftGraph random_digraph(int n, std::mt19937_64& rng,
                          const RandomGraphOptions& opts = {});

}  // namespace gspc

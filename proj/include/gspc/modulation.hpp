#pragma once

/// Carrier modulation with Hadamard powers of conj(lambda), and K-signal
/// frequency-division multiplexing in the spectral impulse (q) domain.
///
/// Multiplying s by conj(lambda)^i moves q down by i positions through the
/// companion shift. A signal whose q vanishes past index B can therefore be
/// moved by B*i without touching the boundary column as long as B*i + B <= N.

#include <cstdint>
#include <vector>

#include "gspc/companion.hpp"

namespace gspc {

struct MultiplexPlan {
  int band = 1;   // B
  int count = 1;  // K
  std::uint64_t model_id = 0;

  std::vector<int> carrier_powers() const;
};

/// Throws InputError unless B >= 1, K >= 1 and K*B <= N, and
/// AssumptionError when the model has a zero eigenvalue.
MultiplexPlan make_plan(const CompanionModel& m, int band, int count);

struct BandCheck {
  bool bandlimited = false;
  /// |q[B:]| / |q|, 0 for the zero signal.
  double leakage = 0.0;
};

BandCheck is_q_bandlimited(const CompanionModel& m, const GraphSignal& sig, int band,
                           double band_tol = Tolerances{}.band);

/// conj(lambda)^power (.) s
GraphSignal modulate(const CompanionModel& m, const GraphSignal& s, int power);

/// d = sum_i conj(lambda)^{B i} (.) s_i. Refuses inputs that leak past B.
GraphSignal multiplex(const CompanionModel& m, const MultiplexPlan& plan,
                      const std::vector<GraphSignal>& signals);

/// Moves q_d[B i, B i + B) to [0, B), zeros the rest, returns to vertex domain.
GraphSignal demultiplex(const CompanionModel& m, const MultiplexPlan& plan,
                        const GraphSignal& d, int index);

/// Alternative: keep q_d[B i, B i + B) in place, then multiply by
/// conj(lambda)^{-B i}.
GraphSignal demultiplex_by_carrier(const CompanionModel& m, const MultiplexPlan& plan,
                                   const GraphSignal& d, int index);

struct Projection {
  GraphSignal signal;
  /// |q[B:]| / |q| before projection.
  double loss = 0.0;
};

/// Zeroes q past index B.
Projection bandlimit_project(const CompanionModel& m, const GraphSignal& s, int band);

struct SpectralView {
  GraphSignal dhat;
  /// |GFT d - sum_i M^{B i} shat_i|
  double discrepancy = 0.0;
};

SpectralView spectral_view(const CompanionModel& m, const MultiplexPlan& plan,
                           const GraphSignal& d, const std::vector<GraphSignal>& signals);

}  // namespace gspc

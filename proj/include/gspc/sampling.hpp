#pragma once

/// Decimation in the companion model.
///
/// A 0/1 indicator delta picks K rows (vertices) and the K eigenvalues at
/// the same positions. The decimated shifts are built from K x K blocks of
/// GFT^-1 and of conj(V), taking the first K columns unless a column mask
/// is supplied.

#include <optional>
#include <vector>

#include "gspc/companion.hpp"

namespace gspc {

enum class BandFlavor {
  /// shat supported on the selected columns; basis GFT^-1.
  spectral,
  /// q supported on the selected columns; basis (1/sqrt N) conj(V).
  q,
};

struct DecimationPlan {
  std::vector<int> delta;
  std::vector<int> kept;
  std::vector<int> columns;
  int k = 0;
  bool conj_closed = false;
};

/// Throws InputError on a malformed indicator or mask.
DecimationPlan make_decimation_plan(const CompanionModel& m, std::vector<int> delta,
                                    std::optional<std::vector<int>> columns = std::nullopt);

struct Decimation {
  CVector lambda_d;
  CMatrix gft_d_inv;
  CMatrix gft_d;
  CMatrix vand_d_conj;
  CMatrix a_d;
  CMatrix m_d;
  CMatrix c_d;
  double cond_gft_block = 0.0;
  double cond_vand_block = 0.0;
  /// max |Im C_d|
  double c_d_imag = 0.0;
  /// Realified C_d, set when the kept eigenvalues are closed under
  /// conjugation.
  std::optional<RMatrix> c_d_real;
  /// Exact companion matrix of prod_kept (x - conj(lambda_i)) and its
  /// max-entry distance from C_d (only when conj_closed).
  std::optional<RMatrix> c_d_exact;
  double companion_error = 0.0;
};

/// Throws AssumptionError when either block is singular within rank_rel.
Decimation decimate(const CompanionModel& m, const DecimationPlan& plan);

/// Recovers a K-bandlimited signal from its values at the kept vertices.
GraphSignal reconstruct(const CompanionModel& m, const DecimationPlan& plan,
                        const CVector& sampled, BandFlavor flavor = BandFlavor::spectral);

struct ReconstructionCheck {
  /// Energy fraction of the input outside the selected band.
  double input_leakage = 0.0;
  /// |reconstruct(s[kept]) - s| / |s|
  double error = 0.0;
};

ReconstructionCheck check_reconstruction(const CompanionModel& m, const DecimationPlan& plan,
                                         const GraphSignal& s,
                                         BandFlavor flavor = BandFlavor::spectral);

/// Largest distance from each eigenvalue of `op` to its nearest unused
/// entry of `target` (greedy matching).
double spectrum_distance(const CMatrix& op, const CVector& target);

}  // namespace gspc

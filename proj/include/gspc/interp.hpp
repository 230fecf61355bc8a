#pragma once

/// \file
/// Barycentric Lagrange interpolation through (lambda_i, value_i) and the
/// two-step coefficient recovery: evaluate the interpolant at the N-th
/// roots of unity, then inverse FFT.

#include <vector>

#include "gspc/common.hpp"
#include "gspc/graph_model.hpp"

namespace gspc {

/// Nodes and barycentric weights. The true weight of node i is
/// weights[i] * 2^rescale_exp; the common factor cancels in the
/// barycentric quotient and is kept only for reference.
struct BarycentricTable {
  CVector nodes;
  CVector weights;
  int rescale_exp = 0;
  /// Index of the node equal to conj(nodes[i]), or -1.
  std::vector<int> conj_partner;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// O(N^2) weights with a power-of-two exponent ledger whenever a partial
/// product leaves [2^-512, 2^512]. Throws AssumptionError on nodes closer
/// than distinct_tol.
BarycentricTable build_table(const CVector& nodes, double distinct_tol);

/// Barycentric quotient at x. Within snap_rel * (1 + |x|) of a node the
/// node's value is returned as is.
cplx eval(const BarycentricTable& table, const CVector& values, cplx x,
          double snap_rel = Tolerances{}.node_snap);

struct CoefficientRecovery {
  /// Ascending coefficients of the interpolating polynomial.
  CVector coeffs;
  /// (1/N) * sum_i |P(node_i) - value_i|^2
  double residual = 0.0;
  /// max |Im| dropped when the data were conjugate-symmetric.
  double imag_discarded = 0.0;
  bool realified = false;
};

/// Coefficients of the degree < N interpolant through (nodes_i, values_i).
/// When the data are closed under conjugation (within sym_tol relative to
/// max|value|) the coefficients are real and are returned realified.
CoefficientRecovery interpolate_coefficients(const BarycentricTable& table,
                                             const CVector& values,
                                             double sym_tol = Tolerances{}.conv);

struct Recovered {
  GraphSignal signal;
  double mse = 0.0;
  double imag_discarded = 0.0;
};

/// p from the spectrum: interpolate (lambda_i, sqrt(N) shat_i).
/// mse = |(1/sqrt N) V p - shat|^2.
Recovered recover_coeffs(const BarycentricTable& table, const GraphSignal& shat,
                         double sym_tol = Tolerances{}.conv);
/// q from the vertex signal: interpolate (conj(lambda_i), sqrt(N) s_i).
/// mse = |(1/sqrt N) V* q - s|^2.
Recovered recover_q(const BarycentricTable& table_conj, const GraphSignal& s,
                    double sym_tol = Tolerances{}.conv);

}  // namespace gspc

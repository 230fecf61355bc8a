#pragma once

/// \file
/// The vertex and spectral companion models of a shift with distinct
/// eigenvalues, and conversions among the four signal representations:
///
///   s  (vertex)            <-GFT->              shat (spectrum)
///   p  (impulse)     shat = (1/sqrt N) V p
///   q  (spectral impulse)  s = (1/sqrt N) conj(V) q
///
/// V is the Vandermonde matrix of the eigenvalues, rows [1, l_i, ..., l_i^{N-1}].

#include <memory>
#include <string>

#include "gspc/common.hpp"
#include "gspc/graph_model.hpp"
#include "gspc/interp.hpp"

namespace gspc {

struct CompanionModel {
  std::shared_ptr<const SpectralDecomposition> spectrum;
  CharPoly charpoly;
  Tolerances tol;

  /// Ones on the subdiagonal, last column -[c_0 ... c_{N-1}]; shared by the
  /// vertex and the spectral companion models.
  RMatrix c_comp;
  CMatrix vand;
  /// (1/sqrt N) V
  CMatrix gft_comp;
  /// sqrt(N) conj(V)^-1
  CMatrix gft_comp_sp;
  /// conj(V) Lambda conj(V)^-1
  CMatrix a_comp_sp;
  /// V conj(Lambda) V^-1
  CMatrix m_comp;
  /// sigma_max / sigma_min of V, by power and inverse iteration.
  double cond_vand = 0.0;

  BarycentricTable table;       // nodes lambda_i
  BarycentricTable table_conj;  // nodes conj(lambda_i)
  Eigen::PartialPivLU<CMatrix> vand_lu;
  Eigen::PartialPivLU<CMatrix> vand_conj_lu;

  const SpectralDecomposition& d() const { return *spectrum; }
  int size() const { return spectrum->size(); }
  std::uint64_t id() const { return spectrum->id; }
  /// Boundary-condition weights -c_n of the companion graph's back edges.
  RVector boundary_weights() const { return c_comp.col(c_comp.cols() - 1); }
};

CompanionModel build_companion(std::shared_ptr<const SpectralDecomposition> d,
                               const CharPoly& cp, const Tolerances& tol = {});

/// Decompose, take the characteristic polynomial and build the companion
/// model in one go.
CompanionModel build_model(const ShiftGraph& g, const DecomposeOptions& opts = {},
                           const Tolerances& tol = {});

/// sigma_max / sigma_min estimate from a fixed number of power iterations.
double estimate_condition(const CMatrix& m, const Eigen::PartialPivLU<CMatrix>& lu,
                          int iterations = 200);

/// DOT digraph: red path 0 -> ... -> N-1, green back edges N-1 -> k
/// weighted -c_k (omitting zeros; self loop for k = N-1).
std::string companion_graph_dot(const CompanionModel& m);

enum class ConversionPath {
  /// shat -> p and s -> q by barycentric interpolation + FFT.
  interpolation,
  /// Dense LU solve against the Vandermonde matrix (diagnostics only).
  dense,
};

struct ConversionDiagnostics {
  /// Residual of the last interpolation step (0 when none was needed).
  double mse = 0.0;
  double imag_discarded = 0.0;
};

GraphSignal to_representation(const CompanionModel& m, const GraphSignal& sig,
                              Rep target,
                              ConversionPath path = ConversionPath::interpolation,
                              ConversionDiagnostics* diag = nullptr);

/// e_n in the p representation.
GraphSignal companion_delta(const CompanionModel& m, int n);

/// Applies the representation's own shift `times` times: A on s, M on
/// shat, C_comp on p and on q.
GraphSignal shift_in_rep(const CompanionModel& m, const GraphSignal& sig, int times);

void require_model(const CompanionModel& m, const GraphSignal& sig);

}  // namespace gspc

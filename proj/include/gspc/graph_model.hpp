#pragma once

/// \file
/// Shift graphs, their spectral decomposition, characteristic polynomial,
/// vertex and spectral impulses, and polynomial (LSI) filtering.
///
/// Indexing convention: A(i, j) is the weight of the edge j -> i, so that
/// shifting a signal moves its samples along the edges.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gspc/common.hpp"

namespace gspc {

class ShiftGraph {
 public:
  explicit ShiftGraph(RMatrix shift, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(shift_.rows()); }
  const RMatrix& matrix() const { return shift_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// True iff every vertex reaches every other vertex along directed edges.
  bool strongly_connected() const;
  /// Number of strongly connected components (Tarjan).
  int component_count() const;

 private:
  RMatrix shift_;
  std::vector<std::string> labels_;
};

enum class EigenOrder {
  /// Ascending phase of conj(lambda) in [0, 2pi), ties by descending
  /// |lambda|, then by solver index. Reproduces DFT order on cycles.
  canonical,
  /// Order in which the eigensolver (LAPACK dgeev) returns eigenvalues.
  solver,
};

struct DecomposeOptions {
  double eig_tol = Tolerances{}.eig;
  /// Absolute eigenvalue separation threshold. When unset the threshold is
  /// Tolerances::distinct_rel * max|lambda|.
  std::optional<double> distinct_tol;
  EigenOrder order = EigenOrder::canonical;
};

struct SpectralDecomposition {
  /// Unique per decomposition; signals carry it to detect model mismatch.
  std::uint64_t id = 0;
  RMatrix shift;
  CVector lambda;
  CMatrix gft;
  /// Columns are unit-norm eigenvectors v_k.
  CMatrix gft_inv;
  /// Spectral shift M = GFT conj(Lambda) GFT^-1.
  CMatrix m_shift;
  double min_gap = 0.0;
  double distinct_tol = 0.0;
  double eig_tol = 0.0;
  /// pairing[k] is the index of conj(lambda_k); pairing[k] == k for real
  /// eigenvalues.
  std::vector<int> pairing;
  /// max_k |A v_k - lambda_k v_k| / |A|_F
  double eig_residual = 0.0;
  /// max |GFT GFT^-1 - I|
  double inverse_residual = 0.0;

  int size() const { return static_cast<int>(lambda.size()); }
  double max_abs_eigenvalue() const;
  bool has_zero_eigenvalue(double tol = 1e-12) const;
};

/// Throws AssumptionError when eigenvalues are not pairwise distinct and
/// InvariantError when the eigen residual exceeds eig_tol.
SpectralDecomposition decompose(const ShiftGraph& g,
                                const DecomposeOptions& opts = {});

/// Monic characteristic polynomial, coefficients in ascending power order.
struct CharPoly {
  std::vector<double> coeffs;  // c_0 ... c_{N-1}, 1
  double imag_residual = 0.0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx evaluate(cplx x) const;
};

CharPoly char_poly(const SpectralDecomposition& d,
                   double charpoly_tol = Tolerances{}.charpoly);

/// Exact companion matrix of a monic polynomial given in ascending order.
RMatrix companion_matrix(std::span<const double> monic_coeffs);
/// Coefficients of prod_k (x - roots_k), ascending, leading 1.
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

/// Cayley-Hamilton residual |c_0 I + ... + c_{N-1} A^{N-1} + A^N|_F.
double cayley_hamilton_residual(const RMatrix& shift, const CharPoly& cp);

enum class Rep { vertex, spectrum, impulse, spectral_impulse };

const char* rep_name(Rep r);
Rep parse_rep(const std::string& name);

struct GraphSignal {
  CVector values;
  Rep rep = Rep::vertex;
  std::uint64_t model_id = 0;
};

GraphSignal make_signal(const SpectralDecomposition& d, CVector values,
                        Rep rep = Rep::vertex);

/// GFT^-1 applied to the flat spectrum (1/sqrt N) 1.
GraphSignal vertex_impulse(const SpectralDecomposition& d);
/// Columns A^n delta_0, n = 0..k_max, by repeated shifting.
CMatrix delayed_impulses(const SpectralDecomposition& d, int k_max,
                         double rank_rel = Tolerances{}.rank_rel);
/// GFT applied to the flat vertex signal (1/sqrt N) 1.
GraphSignal spectral_impulse(const SpectralDecomposition& d);
/// Columns M^n delta_sp0 (spectral domain), n = 0..k_max.
CMatrix delayed_spectral_impulses(const SpectralDecomposition& d, int k_max,
                                  double rank_rel = Tolerances{}.rank_rel);

/// sum_k coeffs[k] A^k s by Horner's rule on the shift (never forms A^k).
GraphSignal lsi_filter_apply(const SpectralDecomposition& d,
                             std::span<const cplx> coeffs,
                             const GraphSignal& sig);
/// Same Horner evaluation against an arbitrary square operator.
CVector apply_polynomial(const CMatrix& op, std::span<const cplx> coeffs,
                         const CVector& x);

CVector to_spectrum(const SpectralDecomposition& d, const CVector& s);
CVector to_vertex(const SpectralDecomposition& d, const CVector& shat);

/// Numerical rank with threshold rank_rel * sigma_max.
int numerical_rank(const CMatrix& m, double rank_rel = Tolerances{}.rank_rel);

}  // namespace gspc

#pragma once

#include <span>
#include <vector>

#include "gspc/common.hpp"
#include "gspc/graph_model.hpp"

namespace gspc {

/// Dense complex polynomial, index = power. Trailing coefficients at or
/// below trim_rel * max|coeff| are dropped; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs, double trim_rel = Tolerances{}.trim);
  Poly(std::span<const cplx> coeffs, double trim_rel = Tolerances{}.trim);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  cplx operator()(cplx x) const;
  /// Coefficients padded (or truncated) to exactly n entries.
  CVector to_vector(int n) const;

 private:
  std::vector<cplx> coeffs_;
};

/// Schoolbook product; reference path and small-size kernel of poly_mul.
Poly poly_mul_schoolbook(const Poly& a, const Poly& b);
/// Linear convolution of the coefficient vectors, FFT-based once the
/// product has 16 or more coefficients.
Poly poly_mul(const Poly& a, const Poly& b);

/// Remainder of long division by a monic polynomial (ascending coeffs).
Poly poly_mod(const Poly& a, std::span<const double> monic);
Poly poly_mod(const Poly& a, const CharPoly& modulus);

}  // namespace gspc

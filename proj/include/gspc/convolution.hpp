#pragma once

#include <string>

#include "gspc/companion.hpp"
#include "gspc/poly.hpp"

namespace gspc {

enum class ConvMethod {
  /// p_u = p_s * p_t mod Delta, then back to the vertex domain.
  fft,
  /// P_t(A) P_s(A) delta_0 by nested Horner evaluation.
  matrix,
  /// GFT^-1 (sqrt(N) that (.) shat).
  spectral,
};

const char* method_name(ConvMethod m);
ConvMethod parse_method(const std::string& name);

/// Graph circular convolution t (*) s, returned in the vertex domain.
GraphSignal convolve(const CompanionModel& m, const GraphSignal& s,
                     const GraphSignal& t, ConvMethod method = ConvMethod::fft);

/// Coefficients p of the filter P_s(A) whose impulse response is s.
CVector filter_from_signal(const CompanionModel& m, const GraphSignal& s);

struct ConvolutionComparison {
  GraphSignal fft, matrix, spectral;
  /// Largest pairwise 2-norm difference among the three results.
  double max_discrepancy = 0.0;
};

ConvolutionComparison convolve_all(const CompanionModel& m, const GraphSignal& s,
                                   const GraphSignal& t);

}  // namespace gspc

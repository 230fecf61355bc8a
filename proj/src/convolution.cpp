#include "gspc/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gspc {

const char* method_name(ConvMethod m) {
  switch (m) {
    case ConvMethod::fft: return "fft";
    case ConvMethod::matrix: return "matrix";
    case ConvMethod::spectral: return "spectral";
  }
  return "?";
}

ConvMethod parse_method(const std::string& name) {
  if (name == "fft") return ConvMethod::fft;
  if (name == "matrix") return ConvMethod::matrix;
  if (name == "spectral") return ConvMethod::spectral;
  throw InputError("unknown convolution method '" + name + "'");
}

namespace {

CVector impulse_coeffs(const CompanionModel& m, const GraphSignal& sig) {
  return to_representation(m, sig, Rep::impulse).values;
}

std::vector<cplx> as_vector(const CVector& v) { return {v.data(), v.data() + v.size()}; }

// (p_s p_t) mod Delta computed in y = x / rho, rho = max|lambda|. FFT rounding
// is uniform across coefficients, so the product is formed where coefficient
// magnitudes are balanced.
CVector product_mod(const CompanionModel& m, const CVector& ps, const CVector& pt) {
  const int n = m.size();
  double rho = m.d().lambda.cwiseAbs().maxCoeff();
  if (!(rho > 0.0)) rho = 1.0;
  std::vector<double> scale(2 * n);
  scale[0] = 1.0;
  for (int k = 1; k < 2 * n; ++k) scale[k] = scale[k - 1] * rho;
  std::vector<cplx> a = as_vector(ps), b = as_vector(pt);
  for (int k = 0; k < n; ++k) {
    a[k] *= scale[k];
    b[k] *= scale[k];
  }
  std::vector<double> monic(m.charpoly.coeffs.begin(), m.charpoly.coeffs.end());
  for (int k = 0; k < n; ++k) monic[k] /= scale[n - k];
  CVector u = poly_mod(poly_mul(Poly(std::move(a)), Poly(std::move(b))), monic).to_vector(n);
  for (int k = 0; k < n; ++k) u[k] /= scale[k];
  return u;
}

}  // namespace

GraphSignal convolve(const CompanionModel& m, const GraphSignal& s,
                     const GraphSignal& t, ConvMethod method) {
  require_model(m, s);
  require_model(m, t);
  const auto& d = m.d();
  const int n = m.size();

  switch (method) {
    case ConvMethod::fft: {
      const GraphSignal u{product_mod(m, impulse_coeffs(m, s), impulse_coeffs(m, t)),
                          Rep::impulse, m.id()};
      return to_representation(m, u, Rep::vertex);
    }
    case ConvMethod::matrix: {
      const CMatrix a = d.shift.cast<cplx>();
      const CVector ps = impulse_coeffs(m, s);
      const CVector pt = impulse_coeffs(m, t);
      const CVector delta0 = vertex_impulse(d).values;
      CVector inner = apply_polynomial(a, {ps.data(), size_t(n)}, delta0);
      CVector outer = apply_polynomial(a, {pt.data(), size_t(n)}, inner);
      return GraphSignal{std::move(outer), Rep::vertex, m.id()};
    }
    case ConvMethod::spectral: {
      const CVector shat = to_representation(m, s, Rep::spectrum).values;
      const CVector that = to_representation(m, t, Rep::spectrum).values;
      const CVector uhat = std::sqrt(double(n)) * that.cwiseProduct(shat);
      return GraphSignal{d.gft_inv * uhat, Rep::vertex, m.id()};
    }
  }
  throw InputError("unknown convolution method");
}

CVector filter_from_signal(const CompanionModel& m, const GraphSignal& s) {
  return impulse_coeffs(m, s);
}

ConvolutionComparison convolve_all(const CompanionModel& m, const GraphSignal& s,
                                   const GraphSignal& t) {
  ConvolutionComparison c{convolve(m, s, t, ConvMethod::fft),
                          convolve(m, s, t, ConvMethod::matrix),
                          convolve(m, s, t, ConvMethod::spectral), 0.0};
  c.max_discrepancy = std::max({(c.fft.values - c.matrix.values).norm(),
                                (c.fft.values - c.spectral.values).norm(),
                                (c.matrix.values - c.spectral.values).norm()});
  return c;
}

}  // namespace gspc

#include "gspc/poly.hpp"

#include <algorithm>

#include "gspc/fft.hpp"

namespace gspc {

namespace {

void trim(std::vector<cplx>& c, double trim_rel) {
  double mx = 0.0;
  for (const cplx& v : c) mx = std::max(mx, std::abs(v));
  const double tol = trim_rel * mx;
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
}

constexpr std::size_t kSchoolbookLimit = 16;

}  // namespace

Poly::Poly(std::vector<cplx> coeffs, double trim_rel) : coeffs_(std::move(coeffs)) {
  trim(coeffs_, trim_rel);
}

Poly::Poly(std::span<const cplx> coeffs, double trim_rel)
    : Poly(std::vector<cplx>(coeffs.begin(), coeffs.end()), trim_rel) {}

cplx Poly::operator()(cplx x) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CVector Poly::to_vector(int n) const {
  CVector v = CVector::Zero(n);
  for (int k = 0; k < n && k < static_cast<int>(coeffs_.size()); ++k) v[k] = coeffs_[k];
  return v;
}

Poly poly_mul_schoolbook(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<cplx> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return Poly(std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  const std::size_t len = a.coeffs().size() + b.coeffs().size() - 1;
  if (len < kSchoolbookLimit) return poly_mul_schoolbook(a, b);
  const std::size_t m = next_pow2(len);
  std::vector<cplx> x(m, 0.0), y(m, 0.0);
  std::copy(a.coeffs().begin(), a.coeffs().end(), x.begin());
  std::copy(b.coeffs().begin(), b.coeffs().end(), y.begin());
  const auto fx = fft(x);
  const auto fy = fft(y);
  for (std::size_t k = 0; k < m; ++k) x[k] = fx[k] * fy[k];
  auto prod = fft(x, true);
  prod.resize(len);
  return Poly(std::move(prod));
}

Poly poly_mod(const Poly& a, std::span<const double> monic) {
  if (monic.size() < 2) throw InputError("modulus must have degree >= 1");
  if (monic.back() != 1.0) throw InputError("modulus is not monic");
  const int n = static_cast<int>(monic.size()) - 1;
  if (a.degree() < n) return a;
  std::vector<cplx> r = a.coeffs();
  for (int k = a.degree(); k >= n; --k) {
    const cplx lead = r[k];
    r[k] = 0.0;
    if (lead == cplx(0.0)) continue;
    for (int i = 0; i < n; ++i) r[k - n + i] -= lead * monic[i];
  }
  r.resize(n);
  return Poly(std::move(r));
}

Poly poly_mod(const Poly& a, const CharPoly& modulus) {
  return poly_mod(a, std::span<const double>(modulus.coeffs));
}

}  // namespace gspc

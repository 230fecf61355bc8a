#include "gspc/fft.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace gspc {

namespace {

using Twiddles = std::vector<cplx>;

// exp(-j 2 pi k / m) for k < m/2, shared across calls.
std::shared_ptr<const Twiddles> twiddles(std::size_t m) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::shared_ptr<const Twiddles>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto tw = std::make_shared<Twiddles>(m / 2);
  for (std::size_t k = 0; k < m / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * double(k) / double(m);
    (*tw)[k] = cplx(std::cos(ang), std::sin(ang));
  }
  cache.emplace(m, tw);
  return tw;
}

void radix2_forward(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * (*tw)[k * stride];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void bluestein_forward(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n - 1);
  // chirp w_k = exp(-j pi k^2 / n); k^2 reduced mod 2n keeps the angle small
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = -std::numbers::pi * double(k2) / double(n);
    chirp[k] = cplx(std::cos(ang), std::sin(ang));
  }
  std::vector<cplx> x(m, 0.0), y(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
  radix2_forward(x);
  radix2_forward(y);
  for (std::size_t k = 0; k < m; ++k) x[k] = std::conj(x[k] * y[k]);
  radix2_forward(x);  // conj-fft-conj = inverse without scaling
  const double scale = 1.0 / double(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = chirp[k] * std::conj(x[k]) * scale;
}

void forward(std::vector<cplx>& a) {
  if ((a.size() & (a.size() - 1)) == 0)
    radix2_forward(a);
  else
    bluestein_forward(a);
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<cplx> fft(std::span<const cplx> x, bool inverse) {
  if (x.empty()) throw InputError("fft of an empty vector");
  std::vector<cplx> a(x.begin(), x.end());
  if (!inverse) {
    forward(a);
    return a;
  }
  for (auto& v : a) v = std::conj(v);
  forward(a);
  const double scale = 1.0 / double(a.size());
  for (auto& v : a) v = std::conj(v) * scale;
  return a;
}

CVector fft(const CVector& x, bool inverse) {
  const auto out = fft(std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())), inverse);
  return Eigen::Map<const CVector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

}  // namespace gspc

#pragma once

// Reference implementations used only by the tests. None of them call into
// the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline cvec naive_dft(const cvec& x, bool inverse = false) {
  const std::size_t n = x.size();
  cvec y(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      acc += x[t] * std::polar(1.0, sign * 2.0 * std::numbers::pi * double((k * t) % n) / double(n));
    y[k] = inverse ? acc / double(n) : acc;
  }
  return y;
}

inline cvec schoolbook(const cvec& a, const cvec& b) {
  if (a.empty() || b.empty()) return {};
  cvec c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Remainder of a / monic by plain long division (monic ascending, lead 1).
inline cvec long_division_remainder(cvec a, const std::vector<double>& monic) {
  const std::size_t n = monic.size() - 1;
  for (std::size_t top = a.size(); top-- > n;) {
    const cplx q = a[top];
    for (std::size_t k = 0; k <= n; ++k) a[top - n + k] -= q * monic[k];
  }
  a.resize(std::min(a.size(), n));
  a.resize(n, 0.0);
  return a;
}

inline cvec cyclic_convolution(const cvec& s, const cvec& t) {
  const std::size_t n = s.size();
  cvec u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[(i + j) % n] += s[i] * t[j];
  return u;
}

/// Newton divided differences through (x_i, y_i), evaluated at z.
inline cplx newton_eval(const cvec& x, const cvec& y, cplx z) {
  const std::size_t n = x.size();
  cvec c = y;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
  cplx acc = c[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) acc = acc * (z - x[i]) + c[i];
  return acc;
}

/// Gaussian elimination with partial pivoting.
inline cvec gauss_solve(std::vector<cvec> a, cvec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  cvec x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Vandermonde system V p = y with rows [1, x_i, x_i^2, ...].
inline cvec vandermonde_solve(const cvec& nodes, const cvec& y) {
  const std::size_t n = nodes.size();
  std::vector<cvec> a(n, cvec(n));
  for (std::size_t i = 0; i < n; ++i) {
    cplx p = 1.0;
    for (std::size_t k = 0; k < n; ++k, p *= nodes[i]) a[i][k] = p;
  }
  return gauss_solve(a, y);
}

/// det(xI - A) by cofactor expansion along rows, memoised on the set of
/// used columns. Coefficients ascending.
class CofactorCharPoly {
 public:
  explicit CofactorCharPoly(const Eigen::MatrixXd& a) : a_(a), n_(int(a.rows())) {}

  std::vector<double> operator()() { return expand(0, 0); }

 private:
  using poly = std::vector<double>;

  poly expand(int row, unsigned used) {
    if (row == n_) return {1.0};
    const auto key = used;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    poly total(n_ - row + 1, 0.0);
    int before = 0;
    for (int c = 0; c < n_; ++c) {
      if (used & (1u << c)) continue;
      // entry of xI - A at (row, c): x*[row == c] - a(row, c)
      const double lin = row == c ? 1.0 : 0.0;
      const double cst = -a_(row, c);
      if (lin != 0.0 || cst != 0.0) {
        const poly minor = expand(row + 1, used | (1u << c));
        const double sign = (before % 2) ? -1.0 : 1.0;
        for (std::size_t k = 0; k < minor.size(); ++k) {
          total[k] += sign * cst * minor[k];
          if (k + 1 < total.size()) total[k + 1] += sign * lin * minor[k];
        }
      }
      ++before;
    }
    memo_[key] = total;
    return total;
  }

  Eigen::MatrixXd a_;
  int n_;
  std::unordered_map<unsigned, poly> memo_;
};

/// Roots of x^3 + b x^2 + c x + d by Cardano's formula.
inline cvec cubic_roots(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const cplx disc = std::sqrt(cplx(q * q / 4.0 + p * p * p / 27.0));
  cplx u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  cvec roots;
  for (int k = 0; k < 3; ++k) {
    const cplx uk = u * std::pow(w, k);
    roots.push_back(uk - p / (3.0 * uk) - b / 3.0);
  }
  return roots;
}

inline cvec random_cvec(std::mt19937_64& rng, std::size_t n, bool complex_values = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cvec v(n);
  for (auto& z : v) {
    const double re = u(rng);
    z = cplx(re, complex_values ? u(rng) : 0.0);
  }
  return v;
}

inline double max_diff(const cvec& a, const cvec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const cplx x = i < a.size() ? a[i] : 0.0;
    const cplx y = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

}  // namespace oracle

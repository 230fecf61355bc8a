#include "gspc/graph_model.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gspc {

namespace {

std::atomic<std::uint64_t> next_model_id{1};

// Unit norm, then rotate so the largest-magnitude entry (lowest index among
// near-ties) is real positive.
void fix_gauge(CVector& v) {
  v /= v.norm();
  double mx = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) mx = std::max(mx, std::abs(v[i]));
  Eigen::Index anchor = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= mx * (1.0 - 1e-9)) {
      anchor = i;
      break;
    }
  }
  const double mag = std::abs(v[anchor]);
  const cplx rot = std::conj(v[anchor]) / mag;
  v *= rot;
  v[anchor] = cplx(mag, 0.0);
}

double conj_phase(cplx z) {
  double ph = std::atan2(-z.imag(), z.real());
  if (ph < 0.0) ph += 2.0 * std::numbers::pi;
  return ph;
}

}  // namespace

ShiftGraph::ShiftGraph(RMatrix shift, std::vector<std::string> labels)
    : shift_(std::move(shift)), labels_(std::move(labels)) {
  if (shift_.rows() != shift_.cols()) {
    std::ostringstream os;
    os << "shift matrix is not square (" << shift_.rows() << "x"
       << shift_.cols() << ")";
    throw InputError(os.str());
  }
  if (shift_.rows() < 2) throw InputError("graph needs at least 2 vertices");
  if (!shift_.allFinite()) throw InputError("shift matrix has non-finite entries");
  if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != shift_.rows())
    throw InputError("label count does not match vertex count");
}

int ShiftGraph::component_count() const {
  const int n = size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;
  int components = 0;

  // Edge j -> i exists iff A(i, j) != 0.
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w = 0; w < n; ++w) {
      if (shift_(w, v) == 0.0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
      } while (w != v);
      ++components;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return components;
}

bool ShiftGraph::strongly_connected() const { return component_count() == 1; }

double SpectralDecomposition::max_abs_eigenvalue() const {
  return lambda.size() == 0 ? 0.0 : lambda.cwiseAbs().maxCoeff();
}

bool SpectralDecomposition::has_zero_eigenvalue(double tol) const {
  const double scale = std::max(1.0, max_abs_eigenvalue());
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (std::abs(lambda[k]) <= tol * scale) return true;
  return false;
}

SpectralDecomposition decompose(const ShiftGraph& g,
                                const DecomposeOptions& opts) {
  const int n = g.size();
  RMatrix work = g.matrix();
  std::vector<double> wr(n), wi(n), vr(static_cast<std::size_t>(n) * n);
  double vl_dummy = 0.0;
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, wr.data(),
                    wi.data(), &vl_dummy, 1, vr.data(), n);
  if (info < 0) throw InvariantError("dgeev rejected its arguments");
  if (info > 0) throw AssumptionError("eigensolver did not converge");

  CVector lam(n);
  CMatrix vecs(n, n);
  std::vector<int> partner(n);
  auto vr_at = [&](int row, int col) { return vr[static_cast<std::size_t>(col) * n + row]; };
  for (int j = 0; j < n; ++j) {
    if (wi[j] == 0.0) {
      lam[j] = cplx(wr[j], 0.0);
      CVector v(n);
      for (int i = 0; i < n; ++i) v[i] = cplx(vr_at(i, j), 0.0);
      fix_gauge(v);
      vecs.col(j) = v;
      partner[j] = j;
    } else {
      if (j + 1 >= n) throw InvariantError("dgeev returned an unpaired complex eigenvalue");
      lam[j] = cplx(wr[j], wi[j]);
      lam[j + 1] = std::conj(lam[j]);
      CVector v(n);
      for (int i = 0; i < n; ++i) v[i] = cplx(vr_at(i, j), vr_at(i, j + 1));
      fix_gauge(v);
      vecs.col(j) = v;
      vecs.col(j + 1) = v.conjugate();
      partner[j] = j + 1;
      partner[j + 1] = j;
      ++j;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (opts.order == EigenOrder::canonical) {
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double pa = conj_phase(lam[a]);
      const double pb = conj_phase(lam[b]);
      if (std::abs(pa - pb) > 1e-12) return pa < pb;
      const double ma = std::abs(lam[a]);
      const double mb = std::abs(lam[b]);
      if (std::abs(ma - mb) > 1e-12 * scale) return ma > mb;
      return false;
    });
  }
  std::vector<int> position(n);
  for (int k = 0; k < n; ++k) position[order[k]] = k;

  SpectralDecomposition d;
  d.id = next_model_id.fetch_add(1);
  d.shift = g.matrix();
  d.lambda.resize(n);
  d.gft_inv.resize(n, n);
  d.pairing.resize(n);
  for (int k = 0; k < n; ++k) {
    d.lambda[k] = lam[order[k]];
    d.gft_inv.col(k) = vecs.col(order[k]);
    d.pairing[k] = position[partner[order[k]]];
  }
  d.eig_tol = opts.eig_tol;

  const double max_abs = d.lambda.cwiseAbs().maxCoeff();
  d.distinct_tol = opts.distinct_tol.value_or(Tolerances{}.distinct_rel * max_abs);
  d.min_gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      d.min_gap = std::min(d.min_gap, std::abs(d.lambda[a] - d.lambda[b]));
  if (!(d.min_gap > d.distinct_tol)) {
    std::ostringstream os;
    os << "eigenvalues are not distinct: min gap " << d.min_gap
       << " <= " << d.distinct_tol;
    throw AssumptionError(os.str());
  }

  const CMatrix a = d.shift.cast<cplx>();
  const double a_norm = std::max(d.shift.norm(), std::numeric_limits<double>::min());
  for (int k = 0; k < n; ++k) {
    const double r = (a * d.gft_inv.col(k) - d.lambda[k] * d.gft_inv.col(k)).norm();
    d.eig_residual = std::max(d.eig_residual, r / a_norm);
  }
  if (d.eig_residual > d.eig_tol) {
    std::ostringstream os;
    os << "eigen residual " << d.eig_residual << " exceeds " << d.eig_tol;
    throw InvariantError(os.str());
  }

  d.gft = d.gft_inv.partialPivLu().inverse();
  d.inverse_residual =
      (d.gft * d.gft_inv - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (d.inverse_residual > d.eig_tol) {
    std::ostringstream os;
    os << "eigenvector matrix is too ill-conditioned: |GFT GFT^-1 - I| = "
       << d.inverse_residual;
    throw AssumptionError(os.str());
  }
  d.m_shift = d.gft * d.lambda.conjugate().asDiagonal() * d.gft_inv;
  return d;
}

cplx CharPoly::evaluate(cplx x) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{cplx(1.0)};
  for (const cplx r : roots) {
    // multiply by (x - r)
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return c;
}

CharPoly char_poly(const SpectralDecomposition& d, double charpoly_tol) {
  const std::vector<cplx> roots(d.lambda.data(), d.lambda.data() + d.lambda.size());
  const std::vector<cplx> c = poly_from_roots(roots);
  CharPoly cp;
  cp.coeffs.resize(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    cp.coeffs[k] = c[k].real();
    cp.imag_residual = std::max(cp.imag_residual, std::abs(c[k].imag()));
  }
  cp.coeffs.back() = 1.0;
  if (cp.imag_residual > charpoly_tol) {
    std::ostringstream os;
    os << "characteristic polynomial is not real: imaginary residual "
       << cp.imag_residual;
    throw InvariantError(os.str());
  }
  return cp;
}

RMatrix companion_matrix(std::span<const double> monic_coeffs) {
  if (monic_coeffs.size() < 2) throw InputError("companion matrix needs degree >= 1");
  if (monic_coeffs.back() != 1.0) throw InputError("polynomial is not monic");
  const auto n = static_cast<Eigen::Index>(monic_coeffs.size() - 1);
  RMatrix c = RMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -monic_coeffs[i];
  return c;
}

double cayley_hamilton_residual(const RMatrix& shift, const CharPoly& cp) {
  const Eigen::Index n = shift.rows();
  RMatrix r = RMatrix::Identity(n, n);
  for (int k = cp.degree() - 1; k >= 0; --k)
    r = r * shift + cp.coeffs[k] * RMatrix::Identity(n, n);
  return r.norm();
}

const char* rep_name(Rep r) {
  switch (r) {
    case Rep::vertex: return "s";
    case Rep::spectrum: return "hat";
    case Rep::impulse: return "p";
    case Rep::spectral_impulse: return "q";
  }
  return "?";
}

Rep parse_rep(const std::string& name) {
  if (name == "s" || name == "vertex") return Rep::vertex;
  if (name == "hat" || name == "spectrum") return Rep::spectrum;
  if (name == "p" || name == "impulse") return Rep::impulse;
  if (name == "q" || name == "spectral_impulse") return Rep::spectral_impulse;
  throw InputError("unknown representation '" + name + "'");
}

GraphSignal make_signal(const SpectralDecomposition& d, CVector values, Rep rep) {
  if (values.size() != d.size()) {
    std::ostringstream os;
    os << "signal length " << values.size() << " does not match graph size "
       << d.size();
    throw InputError(os.str());
  }
  return GraphSignal{std::move(values), rep, d.id};
}

GraphSignal vertex_impulse(const SpectralDecomposition& d) {
  const int n = d.size();
  const CVector flat = CVector::Constant(n, 1.0 / std::sqrt(double(n)));
  return make_signal(d, d.gft_inv * flat, Rep::vertex);
}

GraphSignal spectral_impulse(const SpectralDecomposition& d) {
  const int n = d.size();
  const CVector flat = CVector::Constant(n, 1.0 / std::sqrt(double(n)));
  return make_signal(d, d.gft * flat, Rep::spectrum);
}

int numerical_rank(const CMatrix& m, double rank_rel) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double thresh = rank_rel * sv[0];
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++r;
  return r;
}

namespace {

CMatrix shifted_columns(const CMatrix& op, const CVector& start, int k_max,
                        double rank_rel) {
  if (k_max < 0 || k_max >= op.rows()) {
    std::ostringstream os;
    os << "k_max " << k_max << " outside [0, " << op.rows() - 1 << "]";
    throw InputError(os.str());
  }
  CMatrix cols(op.rows(), k_max + 1);
  cols.col(0) = start;
  for (int k = 1; k <= k_max; ++k) cols.col(k) = op * cols.col(k - 1);
  // columns grow like |lambda|^k; rank is judged on unit-norm columns
  CMatrix unit = cols;
  for (Eigen::Index k = 0; k < unit.cols(); ++k) {
    const double nk = unit.col(k).norm();
    if (nk > 0.0) unit.col(k) /= nk;
  }
  if (numerical_rank(unit, rank_rel) < k_max + 1)
    throw AssumptionError("impulse matrix is rank deficient (near-repeated eigenvalues)");
  return cols;
}

void require_same_model(const SpectralDecomposition& d, const GraphSignal& s) {
  if (s.model_id != d.id) throw InputError("signal belongs to a different model");
  if (s.values.size() != d.size()) throw InputError("signal length mismatch");
}

}  // namespace

CMatrix delayed_impulses(const SpectralDecomposition& d, int k_max, double rank_rel) {
  return shifted_columns(d.shift.cast<cplx>(), vertex_impulse(d).values, k_max, rank_rel);
}

CMatrix delayed_spectral_impulses(const SpectralDecomposition& d, int k_max,
                                  double rank_rel) {
  return shifted_columns(d.m_shift, spectral_impulse(d).values, k_max, rank_rel);
}

CVector apply_polynomial(const CMatrix& op, std::span<const cplx> coeffs,
                         const CVector& x) {
  if (coeffs.empty()) return CVector::Zero(x.size());
  CVector y = coeffs.back() * x;
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) y = op * y + coeffs[k] * x;
  return y;
}

GraphSignal lsi_filter_apply(const SpectralDecomposition& d,
                             std::span<const cplx> coeffs,
                             const GraphSignal& sig) {
  require_same_model(d, sig);
  if (sig.rep != Rep::vertex) throw InputError("LSI filtering needs a vertex-domain signal");
  if (static_cast<int>(coeffs.size()) > d.size())
    throw InputError("filter has more than N coefficients");
  return GraphSignal{apply_polynomial(d.shift.cast<cplx>(), coeffs, sig.values),
                     Rep::vertex, d.id};
}

CVector to_spectrum(const SpectralDecomposition& d, const CVector& s) { return d.gft * s; }
CVector to_vertex(const SpectralDecomposition& d, const CVector& shat) {
  return d.gft_inv * shat;
}

}  // namespace gspc

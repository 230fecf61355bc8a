#include "gspc/companion.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gspc {

namespace {

CMatrix vandermonde(const CVector& nodes) {
  const auto n = nodes.size();
  CMatrix v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx pw = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = pw;
      pw *= nodes[i];
    }
  }
  return v;
}

CVector start_vector(Eigen::Index n) {
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = cplx(1.0 + 0.37 * double(i), 0.11 * double(i % 3));
  return x.normalized();
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", w);
  return buf;
}

}  // namespace

double estimate_condition(const CMatrix& m, const Eigen::PartialPivLU<CMatrix>& lu,
                          int iterations) {
  const Eigen::Index n = m.rows();
  // largest eigenvalue of M^H M
  CVector x = start_vector(n);
  double big = 0.0;
  for (int it = 0; it < iterations; ++it) {
    CVector y = m.adjoint() * (m * x);
    const double norm = y.norm();
    if (norm == 0.0) return std::numeric_limits<double>::infinity();
    x = y / norm;
    const bool done = std::abs(norm - big) <= 1e-12 * norm;
    big = norm;
    if (done) break;
  }
  // largest eigenvalue of (M^H M)^-1 = M^-1 M^-H
  x = start_vector(n);
  double small_inv = 0.0;
  for (int it = 0; it < iterations; ++it) {
    CVector y = lu.solve(CVector(lu.adjoint().solve(x)));
    const double norm = y.norm();
    if (!std::isfinite(norm)) return std::numeric_limits<double>::infinity();
    x = y / norm;
    const bool done = std::abs(norm - small_inv) <= 1e-12 * norm;
    small_inv = norm;
    if (done) break;
  }
  return std::sqrt(big * small_inv);
}

CompanionModel build_companion(std::shared_ptr<const SpectralDecomposition> d,
                               const CharPoly& cp, const Tolerances& tol) {
  if (!d) throw InputError("missing spectral decomposition");
  const int n = d->size();
  if (cp.degree() != n) throw InputError("characteristic polynomial degree mismatch");

  CompanionModel m;
  m.spectrum = d;
  m.charpoly = cp;
  m.tol = tol;
  m.c_comp = companion_matrix(cp.coeffs);
  m.vand = vandermonde(d->lambda);
  const double root_n = std::sqrt(double(n));
  m.gft_comp = m.vand / root_n;
  m.vand_lu = m.vand.partialPivLu();
  const CMatrix vand_conj = m.vand.conjugate();
  m.vand_conj_lu = vand_conj.partialPivLu();
  const CMatrix vand_conj_inv = m.vand_conj_lu.inverse();
  m.gft_comp_sp = root_n * vand_conj_inv;
  m.a_comp_sp = vand_conj * d->lambda.asDiagonal() * vand_conj_inv;
  m.m_comp = m.vand * d->lambda.conjugate().asDiagonal() * m.vand_lu.inverse();
  m.cond_vand = estimate_condition(m.vand, m.vand_lu);

  m.table = build_table(d->lambda, d->distinct_tol);
  m.table_conj = build_table(d->lambda.conjugate(), d->distinct_tol);
  return m;
}

CompanionModel build_model(const ShiftGraph& g, const DecomposeOptions& opts,
                           const Tolerances& tol) {
  auto d = std::make_shared<const SpectralDecomposition>(decompose(g, opts));
  const CharPoly cp = char_poly(*d, tol.charpoly);
  return build_companion(std::move(d), cp, tol);
}

std::string companion_graph_dot(const CompanionModel& m) {
  const int n = m.size();
  const auto& c = m.charpoly.coeffs;
  double scale = 1.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(c[k]));
  const double zero_tol = 1e-9 * scale;

  std::ostringstream os;
  os << "digraph companion {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  if (std::abs(c[0]) <= zero_tol)
    os << "  // c0 = 0: zero eigenvalue, companion graph is not strongly connected\n";
  for (int k = 0; k < n; ++k) os << "  " << k << ";\n";
  for (int k = 0; k + 1 < n; ++k) os << "  " << k << " -> " << k + 1 << " [color=red];\n";
  for (int k = 0; k < n; ++k) {
    const double w = -c[k];
    if (std::abs(w) <= zero_tol) continue;
    os << "  " << n - 1 << " -> " << k << " [color=green";
    if (std::abs(w - 1.0) > zero_tol) os << ", label=\"" << format_weight(w) << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

void require_model(const CompanionModel& m, const GraphSignal& sig) {
  if (sig.model_id != m.id()) throw InputError("signal belongs to a different model");
  if (sig.values.size() != m.size()) throw InputError("signal length mismatch");
}

namespace {

void record(ConversionDiagnostics* diag, const Recovered& r) {
  if (!diag) return;
  diag->mse = r.mse;
  diag->imag_discarded = r.imag_discarded;
}

CVector impulse_from_spectrum(const CompanionModel& m, const GraphSignal& shat,
                              ConversionPath path, ConversionDiagnostics* diag) {
  if (path == ConversionPath::dense) {
    const double root_n = std::sqrt(double(m.size()));
    CVector p = m.vand_lu.solve(CVector(root_n * shat.values));
    if (diag) diag->mse = (m.gft_comp * p - shat.values).squaredNorm();
    return p;
  }
  const Recovered r = recover_coeffs(m.table, shat, m.tol.conv);
  record(diag, r);
  return r.signal.values;
}

CVector q_from_vertex(const CompanionModel& m, const GraphSignal& s,
                      ConversionPath path, ConversionDiagnostics* diag) {
  if (path == ConversionPath::dense) {
    const double root_n = std::sqrt(double(m.size()));
    CVector q = m.vand_conj_lu.solve(CVector(root_n * s.values));
    if (diag) diag->mse = ((m.vand.conjugate() * q) / root_n - s.values).squaredNorm();
    return q;
  }
  const Recovered r = recover_q(m.table_conj, s, m.tol.conv);
  record(diag, r);
  return r.signal.values;
}

CVector vertex_from(const CompanionModel& m, const GraphSignal& sig) {
  const double root_n = std::sqrt(double(m.size()));
  switch (sig.rep) {
    case Rep::vertex: return sig.values;
    case Rep::spectrum: return m.d().gft_inv * sig.values;
    case Rep::impulse: return m.d().gft_inv * (m.gft_comp * sig.values);
    case Rep::spectral_impulse: return (m.vand.conjugate() * sig.values) / root_n;
  }
  throw InputError("unknown representation");
}

}  // namespace

GraphSignal to_representation(const CompanionModel& m, const GraphSignal& sig,
                              Rep target, ConversionPath path,
                              ConversionDiagnostics* diag) {
  require_model(m, sig);
  if (diag) *diag = ConversionDiagnostics{};
  if (sig.rep == target) return sig;

  // shat <-> p do not need the vertex hub
  if (sig.rep == Rep::impulse && target == Rep::spectrum)
    return GraphSignal{m.gft_comp * sig.values, Rep::spectrum, m.id()};
  if (sig.rep == Rep::spectrum && target == Rep::impulse)
    return GraphSignal{impulse_from_spectrum(m, sig, path, diag), Rep::impulse, m.id()};

  const GraphSignal s{vertex_from(m, sig), Rep::vertex, m.id()};
  switch (target) {
    case Rep::vertex: return s;
    case Rep::spectrum: return GraphSignal{m.d().gft * s.values, Rep::spectrum, m.id()};
    case Rep::impulse: {
      const GraphSignal shat{m.d().gft * s.values, Rep::spectrum, m.id()};
      return GraphSignal{impulse_from_spectrum(m, shat, path, diag), Rep::impulse, m.id()};
    }
    case Rep::spectral_impulse:
      return GraphSignal{q_from_vertex(m, s, path, diag), Rep::spectral_impulse, m.id()};
  }
  throw InputError("unknown representation");
}

GraphSignal companion_delta(const CompanionModel& m, int n) {
  if (n < 0 || n >= m.size()) {
    std::ostringstream os;
    os << "delta index " << n << " outside [0, " << m.size() - 1 << "]";
    throw InputError(os.str());
  }
  CVector e = CVector::Zero(m.size());
  e[n] = 1.0;
  return GraphSignal{std::move(e), Rep::impulse, m.id()};
}

GraphSignal shift_in_rep(const CompanionModel& m, const GraphSignal& sig, int times) {
  require_model(m, sig);
  if (times < 0) throw InputError("shift count must be non-negative");
  CMatrix op;
  switch (sig.rep) {
    case Rep::vertex: op = m.d().shift.cast<cplx>(); break;
    case Rep::spectrum: op = m.d().m_shift; break;
    case Rep::impulse:
    case Rep::spectral_impulse: op = m.c_comp.cast<cplx>(); break;
  }
  CVector x = sig.values;
  for (int k = 0; k < times; ++k) x = op * x;
  return GraphSignal{std::move(x), sig.rep, sig.model_id};
}

}  // namespace gspc

#include "gspc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gspc {

namespace {

CMatrix block(const CMatrix& src, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMatrix b(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = src(rows[i], cols[j]);
  return b;
}

double condition(const CMatrix& b) {
  Eigen::JacobiSVD<CMatrix> svd(b);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

void require_invertible(const CMatrix& b, double rank_rel, const char* what) {
  if (numerical_rank(b, rank_rel) < b.rows()) {
    std::ostringstream os;
    os << what << " block is singular for this vertex selection";
    throw AssumptionError(os.str());
  }
}

bool conj_closed(const std::vector<int>& kept, const std::vector<int>& pairing) {
  for (int i : kept)
    if (!std::binary_search(kept.begin(), kept.end(), pairing[i])) return false;
  return true;
}

const CMatrix& basis(const CompanionModel& m, BandFlavor flavor, CMatrix& scratch) {
  if (flavor == BandFlavor::spectral) return m.d().gft_inv;
  scratch = m.vand.conjugate() / std::sqrt(double(m.size()));
  return scratch;
}

}  // namespace

DecimationPlan make_decimation_plan(const CompanionModel& m, std::vector<int> delta,
                                    std::optional<std::vector<int>> columns) {
  const int n = m.size();
  if (static_cast<int>(delta.size()) != n) {
    std::ostringstream os;
    os << "indicator has length " << delta.size() << ", model has N = " << n;
    throw InputError(os.str());
  }
  DecimationPlan p;
  for (int i = 0; i < n; ++i) {
    if (delta[i] != 0 && delta[i] != 1) throw InputError("indicator entries must be 0 or 1");
    if (delta[i]) p.kept.push_back(i);
  }
  p.k = static_cast<int>(p.kept.size());
  if (p.k < 1) throw InputError("indicator keeps no vertex");
  if (columns) {
    std::vector<int> c = *columns;
    std::sort(c.begin(), c.end());
    if (static_cast<int>(c.size()) != p.k || std::adjacent_find(c.begin(), c.end()) != c.end() ||
        c.front() < 0 || c.back() >= n)
      throw InputError("column mask must hold K distinct indices in [0, N)");
    p.columns = std::move(c);
  } else {
    for (int j = 0; j < p.k; ++j) p.columns.push_back(j);
  }
  p.delta = std::move(delta);
  p.conj_closed = conj_closed(p.kept, m.d().pairing);
  return p;
}

Decimation decimate(const CompanionModel& m, const DecimationPlan& plan) {
  const auto& d = m.d();
  Decimation r;
  r.lambda_d.resize(plan.k);
  for (int i = 0; i < plan.k; ++i) r.lambda_d[i] = d.lambda[plan.kept[i]];

  r.gft_d_inv = block(d.gft_inv, plan.kept, plan.columns);
  r.vand_d_conj = block(m.vand.conjugate(), plan.kept, plan.columns);
  require_invertible(r.gft_d_inv, m.tol.rank_rel, "GFT^-1");
  require_invertible(r.vand_d_conj, m.tol.rank_rel, "conj(V)");
  r.cond_gft_block = condition(r.gft_d_inv);
  r.cond_vand_block = condition(r.vand_d_conj);

  const auto gft_lu = r.gft_d_inv.partialPivLu();
  r.gft_d = gft_lu.inverse();
  r.a_d = r.gft_d_inv * r.lambda_d.asDiagonal() * r.gft_d;
  r.m_d = r.gft_d * r.lambda_d.conjugate().asDiagonal() * r.gft_d_inv;
  const auto v_lu = r.vand_d_conj.partialPivLu();
  r.c_d = v_lu.solve(CMatrix(r.lambda_d.conjugate().asDiagonal() * r.vand_d_conj));
  r.c_d_imag = r.c_d.imag().cwiseAbs().maxCoeff();

  if (plan.conj_closed) {
    r.c_d_real = r.c_d.real();
    const CVector roots = r.lambda_d.conjugate();
    const auto poly = poly_from_roots({roots.data(), static_cast<std::size_t>(roots.size())});
    std::vector<double> monic(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) monic[k] = poly[k].real();
    monic.back() = 1.0;
    r.c_d_exact = companion_matrix(monic);
    r.companion_error = (r.c_d - r.c_d_exact->cast<cplx>()).cwiseAbs().maxCoeff();
  }
  return r;
}

GraphSignal reconstruct(const CompanionModel& m, const DecimationPlan& plan,
                        const CVector& sampled, BandFlavor flavor) {
  if (sampled.size() != plan.k) {
    std::ostringstream os;
    os << "expected " << plan.k << " samples, got " << sampled.size();
    throw InputError(os.str());
  }
  CMatrix scratch;
  const CMatrix& b = basis(m, flavor, scratch);
  const CMatrix blk = block(b, plan.kept, plan.columns);
  require_invertible(blk, m.tol.rank_rel, flavor == BandFlavor::spectral ? "GFT^-1" : "conj(V)");
  const CVector coeffs = blk.partialPivLu().solve(sampled);
  CVector s = CVector::Zero(m.size());
  for (int j = 0; j < plan.k; ++j) s += coeffs[j] * b.col(plan.columns[j]);
  return GraphSignal{std::move(s), Rep::vertex, m.id()};
}

ReconstructionCheck check_reconstruction(const CompanionModel& m, const DecimationPlan& plan,
                                         const GraphSignal& s, BandFlavor flavor) {
  require_model(m, s);
  const GraphSignal sv = to_representation(m, s, Rep::vertex);
  const Rep band_rep = flavor == BandFlavor::spectral ? Rep::spectrum : Rep::spectral_impulse;
  const CVector coeffs = to_representation(m, sv, band_rep).values;

  ReconstructionCheck c;
  const double total = coeffs.norm();
  if (total > 0.0) {
    double in_band = 0.0;
    for (int j : plan.columns) in_band += std::norm(coeffs[j]);
    c.input_leakage = std::sqrt(std::max(0.0, total * total - in_band)) / total;
  }
  CVector sampled(plan.k);
  for (int i = 0; i < plan.k; ++i) sampled[i] = sv.values[plan.kept[i]];
  const GraphSignal back = reconstruct(m, plan, sampled, flavor);
  const double norm = sv.values.norm();
  c.error = (back.values - sv.values).norm() / (norm > 0.0 ? norm : 1.0);
  return c;
}

double spectrum_distance(const CMatrix& op, const CVector& target) {
  if (op.rows() != target.size()) throw InputError("spectrum size mismatch");
  Eigen::ComplexEigenSolver<CMatrix> es(op, false);
  const CVector ev = es.eigenvalues();
  std::vector<bool> used(target.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < target.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(ev[i] - target[j]);
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace gspc

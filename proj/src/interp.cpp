#include "gspc/interp.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gspc/fft.hpp"

namespace gspc {

namespace {

constexpr int kExpLimit = 512;

// Pull the binary exponent out of z when |z| leaves [2^-512, 2^512].
void renormalize(cplx& z, int& exp_ledger) {
  int e = 0;
  std::frexp(std::abs(z), &e);
  if (e > kExpLimit || e < -kExpLimit) {
    z = cplx(std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e));
    exp_ledger += e;
  }
}

}  // namespace

BarycentricTable build_table(const CVector& nodes, double distinct_tol) {
  const auto n = nodes.size();
  if (n == 0) throw InputError("interpolation needs at least one node");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k)
      if (std::abs(nodes[i] - nodes[k]) <= distinct_tol) {
        std::ostringstream os;
        os << "interpolation nodes " << i << " and " << k << " coincide";
        throw AssumptionError(os.str());
      }

  std::vector<cplx> inv(n);
  std::vector<int> exps(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx prod = 1.0;
    int ledger = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      prod *= nodes[i] - nodes[k];
      renormalize(prod, ledger);
    }
    inv[i] = 1.0 / prod;
    exps[i] = -ledger;
  }

  BarycentricTable t;
  t.nodes = nodes;
  t.rescale_exp = *std::max_element(exps.begin(), exps.end());
  t.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int shift = exps[i] - t.rescale_exp;
    t.weights[i] = cplx(std::ldexp(inv[i].real(), shift), std::ldexp(inv[i].imag(), shift));
    if (!std::isfinite(std::abs(t.weights[i])) || t.weights[i] == cplx(0.0))
      throw AssumptionError("barycentric weight under/overflow");
  }

  t.conj_partner.assign(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = -1;
    double best_d = distinct_tol;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double d = std::abs(nodes[k] - std::conj(nodes[i]));
      if (d <= best_d) {
        best = k;
        best_d = d;
      }
    }
    t.conj_partner[i] = static_cast<int>(best);
  }
  return t;
}

cplx eval(const BarycentricTable& table, const CVector& values, cplx x,
          double snap_rel) {
  if (values.size() != table.nodes.size())
    throw InputError("value count does not match node count");
  const double snap = snap_rel * (1.0 + std::abs(x));
  cplx num = 0.0;
  cplx den = 0.0;
  for (Eigen::Index i = 0; i < table.nodes.size(); ++i) {
    const cplx diff = x - table.nodes[i];
    if (std::abs(diff) <= snap) return values[i];
    const cplx t = table.weights[i] / diff;
    num += t * values[i];
    den += t;
  }
  if (den == cplx(0.0) || !std::isfinite(std::abs(den)) || !std::isfinite(std::abs(num)))
    throw AssumptionError("barycentric denominator underflow");
  return num / den;
}

CoefficientRecovery interpolate_coefficients(const BarycentricTable& table,
                                             const CVector& values, double sym_tol) {
  const int n = table.size();
  if (values.size() != n) throw InputError("value count does not match node count");

  std::vector<cplx> at_roots(n);
  for (int k = 0; k < n; ++k) {
    const double ang = -2.0 * std::numbers::pi * double(k) / double(n);
    at_roots[k] = eval(table, values, cplx(std::cos(ang), std::sin(ang)));
  }
  const std::vector<cplx> coeffs = fft(at_roots, true);

  CoefficientRecovery out;
  out.coeffs = Eigen::Map<const CVector>(coeffs.data(), n);

  const double scale = values.cwiseAbs().maxCoeff();
  bool symmetric = true;
  for (int i = 0; i < n && symmetric; ++i) {
    const int j = table.conj_partner[i];
    symmetric = j >= 0 && std::abs(values[j] - std::conj(values[i])) <= sym_tol * scale;
  }
  if (symmetric) {
    out.imag_discarded = out.coeffs.imag().cwiseAbs().maxCoeff();
    out.coeffs = out.coeffs.real().cast<cplx>();
    out.realified = true;
  }

  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx p = 0.0;
    for (int k = n - 1; k >= 0; --k) p = p * table.nodes[i] + out.coeffs[k];
    acc += std::norm(p - values[i]);
  }
  out.residual = acc / double(n);
  return out;
}

namespace {

Recovered recover(const BarycentricTable& table, const GraphSignal& sig,
                  Rep expected, Rep produced, double sym_tol) {
  if (sig.rep != expected) {
    std::ostringstream os;
    os << "expected a '" << rep_name(expected) << "' signal, got '"
       << rep_name(sig.rep) << "'";
    throw InputError(os.str());
  }
  const double root_n = std::sqrt(double(table.size()));
  const CoefficientRecovery r = interpolate_coefficients(table, root_n * sig.values, sym_tol);
  return Recovered{GraphSignal{r.coeffs, produced, sig.model_id}, r.residual,
                   r.imag_discarded};
}

}  // namespace

Recovered recover_coeffs(const BarycentricTable& table, const GraphSignal& shat,
                         double sym_tol) {
  return recover(table, shat, Rep::spectrum, Rep::impulse, sym_tol);
}

Recovered recover_q(const BarycentricTable& table_conj, const GraphSignal& s,
                    double sym_tol) {
  return recover(table_conj, s, Rep::vertex, Rep::spectral_impulse, sym_tol);
}

}  // namespace gspc

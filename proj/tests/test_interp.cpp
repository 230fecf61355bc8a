#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <numeric>

#include "gspc/companion.hpp"
#include "gspc/generators.hpp"
#include "gspc/interp.hpp"
#include "oracles.hpp"

using namespace gspc;

namespace {

CVector vec(std::initializer_list<cplx> xs) {
  CVector v(xs.size());
  std::copy(xs.begin(), xs.end(), v.data());
  return v;
}

CVector from(const oracle::cvec& v) { return Eigen::Map<const CVector>(v.data(), Eigen::Index(v.size())); }

oracle::cvec to(const CVector& v) { return {v.data(), v.data() + v.size()}; }

cplx true_weight(const BarycentricTable& t, int i) {
  return t.weights[i] * std::ldexp(1.0, t.rescale_exp);
}

}  // namespace

TEST_CASE("two-point weights") {
  const BarycentricTable t = build_table(vec({1.0, -1.0}), 1e-12);
  CHECK(std::abs(true_weight(t, 0) - 0.5) < 1e-15);
  CHECK(std::abs(true_weight(t, 1) + 0.5) < 1e-15);
  CHECK(std::abs(eval(t, vec({1.0, -1.0}), 0.0)) < 1e-15);
}

TEST_CASE("weights at the 4th roots of unity are proportional to the nodes") {
  CVector nodes(4);
  for (int k = 0; k < 4; ++k) nodes[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / 4.0);
  const BarycentricTable t = build_table(nodes, 1e-12);
  const cplx ratio = t.weights[0] / nodes[0];
  for (int k = 1; k < 4; ++k) CHECK(std::abs(t.weights[k] / nodes[k] - ratio) < 1e-14);
  // direct products as a second opinion
  for (int i = 0; i < 4; ++i) {
    cplx prod = 1.0;
    for (int k = 0; k < 4; ++k)
      if (k != i) prod *= nodes[i] - nodes[k];
    CHECK(std::abs(true_weight(t, i) - 1.0 / prod) < 1e-14);
  }
}

TEST_CASE("duplicate nodes are rejected") {
  CHECK_THROWS_AS(build_table(vec({1.0, 2.0, 1.0}), 1e-9), AssumptionError);
}

TEST_CASE("weights stay finite under heavy rescaling") {
  // 200 nodes clustered on a tiny circle force products far below 2^-512
  CVector nodes(200);
  for (int k = 0; k < 200; ++k) nodes[k] = std::polar(1e-3, 2.0 * std::numbers::pi * k / 200.0);
  const BarycentricTable t = build_table(nodes, 1e-300);
  CHECK(t.rescale_exp != 0);
  for (int k = 0; k < 200; ++k) {
    CHECK(std::isfinite(std::abs(t.weights[k])));
    CHECK(std::abs(t.weights[k]) > 0.0);
  }
  CHECK(std::abs(eval(t, nodes, 0.5e-3) - 0.5e-3) < 1e-12);
}

TEST_CASE("ladder-12 table is finite") {
  const CompanionModel m = build_model(ladder_graph(12));
  for (int k = 0; k < 12; ++k) CHECK(std::isfinite(std::abs(m.table.weights[k])));
  CHECK(std::abs(m.table.rescale_exp) < 64);
}

TEST_CASE("interpolation condition holds exactly at nodes") {
  std::mt19937_64 rng(2);
  const CVector nodes = from(oracle::random_cvec(rng, 8));
  const CVector vals = from(oracle::random_cvec(rng, 8));
  const BarycentricTable t = build_table(nodes, 1e-9);
  for (int i = 0; i < 8; ++i) CHECK(eval(t, vals, nodes[i]) == vals[i]);
}

TEST_CASE("barycentric evaluation matches Newton divided differences") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto nodes = oracle::random_cvec(rng, 8);
    const auto vals = oracle::random_cvec(rng, 8);
    const BarycentricTable t = build_table(from(nodes), 1e-9);
    for (int r = 0; r < 5; ++r) {
      const cplx x = oracle::random_cvec(rng, 1)[0];
      const cplx expect = oracle::newton_eval(nodes, vals, x);
      CHECK(std::abs(eval(t, from(vals), x) - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("permuting the nodes leaves the interpolant unchanged") {
  std::mt19937_64 rng(6);
  const CVector nodes = from(oracle::random_cvec(rng, 9));
  const CVector vals = from(oracle::random_cvec(rng, 9));
  std::vector<int> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  CVector pn(9), pv(9);
  for (int i = 0; i < 9; ++i) {
    pn[i] = nodes[perm[i]];
    pv[i] = vals[perm[i]];
  }
  const BarycentricTable a = build_table(nodes, 1e-9), b = build_table(pn, 1e-9);
  for (int r = 0; r < 10; ++r) {
    const cplx x = oracle::random_cvec(rng, 1)[0] * 1.5;
    // extrapolation amplifies rounding, so the bound is looser than at interior points
    CHECK(std::abs(eval(a, vals, x) - eval(b, pv, x)) <= 1e-10 * std::max(1.0, std::abs(eval(a, vals, x))));
  }
}

TEST_CASE("coefficient recovery matches a dense Vandermonde solve") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 9;
    // well separated nodes near the unit disc
    oracle::cvec nodes;
    while (static_cast<int>(nodes.size()) < n) {
      const cplx z = oracle::random_cvec(rng, 1)[0];
      bool ok = true;
      for (const auto& y : nodes) ok = ok && std::abs(z - y) > 0.2;
      if (ok) nodes.push_back(z);
    }
    const auto vals = oracle::random_cvec(rng, n);
    const BarycentricTable t = build_table(from(nodes), 1e-9);
    const CoefficientRecovery rec = interpolate_coefficients(t, from(vals));
    const auto dense = oracle::vandermonde_solve(nodes, vals);
    CMatrix v(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) v(i, k) = std::pow(nodes[i], k);
    Eigen::JacobiSVD<CMatrix> svd(v);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    CHECK(oracle::max_diff(to(rec.coeffs), dense) <= std::max(1e-8, 1e-10 * cond));
  }
}

TEST_CASE("recover_coeffs on cycles and flat spectra") {
  std::mt19937_64 rng(10);
  for (int n : {3, 5, 8, 11}) {
    const CompanionModel m = build_model(cycle_graph(n));
    const GraphSignal s = make_signal(m.d(), from(oracle::random_cvec(rng, n)));
    const GraphSignal shat{m.d().gft * s.values, Rep::spectrum, m.id()};
    const Recovered r = recover_coeffs(m.table, shat);
    CHECK(r.signal.rep == Rep::impulse);
    CHECK((r.signal.values - s.values).norm() < 1e-10);

    const GraphSignal flat{CVector::Constant(n, 1.0 / std::sqrt(double(n))), Rep::spectrum, m.id()};
    CVector e0 = CVector::Zero(n);
    e0[0] = 1.0;
    CHECK((recover_coeffs(m.table, flat).signal.values - e0).norm() < 1e-12);
    const GraphSignal sflat = make_signal(m.d(), CVector::Constant(n, 1.0 / std::sqrt(double(n))));
    CHECK((recover_q(m.table_conj, sflat).signal.values - e0).norm() < 1e-12);
    CHECK((recover_q(m.table_conj, s).signal.values - shat.values).norm() < 1e-10);
  }
}

TEST_CASE("random digraph residuals") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CompanionModel m = build_model(random_digraph(trial % 2 ? 11 : 12, rng));
    const int n = m.size();
    const GraphSignal s = make_signal(m.d(), from(oracle::random_cvec(rng, n, false)));
    const GraphSignal shat{m.d().gft * s.values, Rep::spectrum, m.id()};
    const Recovered rp = recover_coeffs(m.table, shat);
    CHECK(rp.mse <= 1e-6);
    CHECK((m.gft_comp * rp.signal.values - shat.values).squaredNorm() <= 1e-6);
    // real signal on a real graph: p is real
    CHECK(rp.signal.values.imag().norm() == 0.0);
    const Recovered rq = recover_q(m.table_conj, s);
    CHECK(rq.mse <= 1e-6);
  }
}

TEST_CASE("reused table gives identical results") {
  std::mt19937_64 rng(14);
  const CompanionModel m = build_model(random_digraph(10, rng));
  const GraphSignal shat{m.d().gft * from(oracle::random_cvec(rng, 10)), Rep::spectrum, m.id()};
  const BarycentricTable fresh = build_table(m.d().lambda, m.d().distinct_tol);
  CHECK(recover_coeffs(m.table, shat).signal.values == recover_coeffs(fresh, shat).signal.values);
}

TEST_CASE("wrong representation is rejected") {
  const CompanionModel m = build_model(cycle_graph(4));
  const GraphSignal s = make_signal(m.d(), CVector::Ones(4));
  CHECK_THROWS_AS(recover_coeffs(m.table, s), InputError);
}

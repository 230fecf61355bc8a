#include <doctest.h>

#include "gspc/generators.hpp"
#include "gspc/graph_io.hpp"
#include "gspc/sampling.hpp"
#include "oracles.hpp"

using namespace gspc;

namespace {

const std::vector<int> kExampleDelta{0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0};

CompanionModel ladder_solver_order() {
  DecomposeOptions opts;
  opts.order = EigenOrder::solver;
  return build_model(ladder_graph(12), opts);
}

CVector from(const oracle::cvec& v) { return Eigen::Map<const CVector>(v.data(), Eigen::Index(v.size())); }

}  // namespace

TEST_CASE("plan construction") {
  const CompanionModel m = build_model(cycle_graph(6));
  CHECK_THROWS_AS(make_decimation_plan(m, {1, 0, 1}), InputError);
  CHECK_THROWS_AS(make_decimation_plan(m, {0, 0, 0, 0, 0, 0}), InputError);
  CHECK_THROWS_AS(make_decimation_plan(m, {2, 0, 0, 0, 0, 0}), InputError);
  const DecimationPlan p = make_decimation_plan(m, {1, 1, 0, 0, 0, 1});
  CHECK(p.k == 3);
  CHECK(p.kept == std::vector<int>{0, 1, 5});
  CHECK(p.columns == std::vector<int>{0, 1, 2});
  CHECK(p.conj_closed);  // lambda_1 and lambda_5 are conjugate on the 6-cycle
  CHECK_FALSE(make_decimation_plan(m, {1, 1, 0, 0, 0, 0}).conj_closed);
  CHECK_THROWS_AS(make_decimation_plan(m, {1, 1, 0, 0, 0, 1}, std::vector<int>{0, 0, 1}),
                  InputError);
  CHECK(make_decimation_plan(m, {1, 1, 0, 0, 0, 1}, std::vector<int>{5, 0, 2}).columns ==
        std::vector<int>{0, 2, 5});
}

TEST_CASE("ladder-12 decimation example") {
  const CompanionModel m = ladder_solver_order();
  const DecimationPlan plan = make_decimation_plan(m, kExampleDelta);
  CHECK(plan.conj_closed);
  const Decimation dec = decimate(m, plan);
  const std::vector<cplx> expect{{.767, .538}, {.767, -.538}, {.403, .864}, {.403, -.864}};
  for (const auto& e : expect) {
    double best = 1e9;
    for (int k = 0; k < 4; ++k) best = std::min(best, std::abs(dec.lambda_d[k] - e));
    CHECK(best < 5e-3);
  }
  CHECK(dec.c_d_imag <= 1e-6);
  REQUIRE(dec.c_d_exact.has_value());
  CHECK(dec.companion_error <= 1e-6);

  // exact companion matrix of the kept conjugate eigenvalues, built by hand
  auto poly = oracle::cvec{1.0};
  for (int k = 0; k < 4; ++k) {
    oracle::cvec next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= std::conj(dec.lambda_d[k]) * poly[i];
    }
    poly = next;
  }
  for (int i = 0; i < 4; ++i) CHECK(std::abs(dec.c_d(i, 3) + poly[i].real()) <= 1e-6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(dec.c_d(i, j) - (i == j + 1 ? 1.0 : 0.0)) <= 1e-6);

  const CVector lc = dec.lambda_d.conjugate();
  CHECK(spectrum_distance(dec.a_d, dec.lambda_d) <= 1e-6);
  CHECK(spectrum_distance(dec.m_d, lc) <= 1e-6);
  CHECK(spectrum_distance(dec.c_d, lc) <= 1e-6);
  // A_d and C_d share a characteristic polynomial: C_d is the companion graph of A_d
  CHECK(spectrum_distance(dec.c_d, dec.lambda_d) <= 1e-6);
}

TEST_CASE("non-conjugate selections give a complex C_d") {
  const CompanionModel m = ladder_solver_order();
  std::vector<int> delta(12, 0);
  delta[4] = delta[8] = delta[9] = 1;  // 4 without its partner 5
  const DecimationPlan plan = make_decimation_plan(m, delta);
  CHECK_FALSE(plan.conj_closed);
  const Decimation dec = decimate(m, plan);
  CHECK(dec.c_d_imag > 1e-6);
  CHECK_FALSE(dec.c_d_exact.has_value());
  CHECK(spectrum_distance(dec.c_d, dec.lambda_d.conjugate()) <= 1e-6);
}

TEST_CASE("even eigenvalues of the 8-cycle decimate to the 4-cycle") {
  const CompanionModel m = build_model(cycle_graph(8));
  const DecimationPlan plan = make_decimation_plan(m, {1, 0, 1, 0, 1, 0, 1, 0});
  const Decimation dec = decimate(m, plan);
  const CVector lc = dec.lambda_d.conjugate();
  CHECK(spectrum_distance(dec.a_d, dec.lambda_d) < 1e-9);
  CHECK(spectrum_distance(dec.m_d, lc) < 1e-9);
  CHECK(spectrum_distance(dec.c_d, lc) < 1e-9);
  // kept eigenvalues are the 4th roots of unity, so C_d is the companion of x^4 - 1
  CHECK((dec.c_d - cycle_graph(4).matrix().cast<cplx>()).norm() < 1e-9);
}

TEST_CASE("reconstruction of bandlimited signals") {
  const CompanionModel m = ladder_solver_order();
  const DecimationPlan plan = make_decimation_plan(m, kExampleDelta);
  std::mt19937_64 rng(1);
  for (auto flavor : {BandFlavor::spectral, BandFlavor::q}) {
    CVector coeffs = CVector::Zero(12);
    coeffs.head(4) = from(oracle::random_cvec(rng, 4));
    const CVector s = flavor == BandFlavor::spectral
                          ? CVector(m.d().gft_inv * coeffs)
                          : CVector(m.vand.conjugate() * coeffs / std::sqrt(12.0));
    const GraphSignal sig = make_signal(m.d(), s);
    const ReconstructionCheck rc = check_reconstruction(m, plan, sig, flavor);
    CHECK(rc.error <= 1e-6);
    CHECK(rc.input_leakage <= 1e-6);
  }
  // a full-band input is surfaced, not silently accepted
  const GraphSignal wide = make_signal(m.d(), from(oracle::random_cvec(rng, 12)));
  const ReconstructionCheck bad = check_reconstruction(m, plan, wide);
  CHECK(bad.input_leakage > 0.1);
  CHECK(bad.error > 1e-3);
  CHECK_THROWS_AS(reconstruct(m, plan, CVector::Zero(3)), InputError);
}

TEST_CASE("keeping every vertex reconstructs exactly") {
  std::mt19937_64 rng(2);
  const CompanionModel m = build_model(random_digraph(7, rng));
  const DecimationPlan plan = make_decimation_plan(m, std::vector<int>(7, 1));
  CHECK(plan.k == 7);
  const CVector s = from(oracle::random_cvec(rng, 7));
  const GraphSignal back = reconstruct(m, plan, s);
  CHECK((back.values - s).norm() < 1e-9);
}

TEST_CASE("cospectrality on random graphs") {
  std::mt19937_64 rng(3);
  int tested = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 9;
    const CompanionModel m = build_model(random_digraph(n, rng));
    std::vector<int> delta(n, 0);
    int kept = 0;
    for (int i = 0; i < n && kept < n / 2; ++i) {
      if (delta[i]) continue;
      const int j = m.d().pairing[i];
      if (kept + (i == j ? 1 : 2) > n / 2) continue;
      delta[i] = delta[j] = 1;
      kept += i == j ? 1 : 2;
    }
    const DecimationPlan plan = make_decimation_plan(m, delta);
    REQUIRE(plan.conj_closed);
    Decimation dec;
    try {
      dec = decimate(m, plan);
    } catch (const AssumptionError&) {
      continue;
    }
    ++tested;
    const double tol = 1e-6 * std::max({1.0, dec.cond_gft_block, dec.cond_vand_block});
    const CVector lc = dec.lambda_d.conjugate();
    CHECK(spectrum_distance(dec.a_d, dec.lambda_d) <= tol);
    CHECK(spectrum_distance(dec.m_d, lc) <= tol);
    CHECK(spectrum_distance(dec.c_d, lc) <= tol);
    CHECK(dec.c_d_imag <= tol);
    CHECK(dec.companion_error <= tol);
  }
  CHECK(tested >= 10);
}

TEST_CASE("singular blocks are reported") {
  // two vertices with identical eigenvector rows make the GFT^-1 block singular
  const CompanionModel m = build_model(cycle_graph(4));
  const DecimationPlan plan = make_decimation_plan(m, {1, 0, 1, 0}, std::vector<int>{0, 2});
  CHECK_THROWS_AS(decimate(m, plan), AssumptionError);
}

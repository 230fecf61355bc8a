#include <doctest.h>

#include "gspc/convolution.hpp"
#include "gspc/fft.hpp"
#include "gspc/generators.hpp"
#include "gspc/poly.hpp"
#include "oracles.hpp"

using namespace gspc;

namespace {

CVector from(const oracle::cvec& v) { return Eigen::Map<const CVector>(v.data(), Eigen::Index(v.size())); }
oracle::cvec to(const CVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("impulse transforms to a flat vector") {
  const std::vector<cplx> x{1.0, 0.0, 0.0, 0.0};
  for (const auto& y : fft(x)) CHECK(std::abs(y - 1.0) < 1e-15);
  CHECK_THROWS_AS(fft(std::vector<cplx>{}), InputError);
}

TEST_CASE("fft agrees with the naive DFT for lengths 1..64 and 4096") {
  std::mt19937_64 rng(1);
  std::vector<int> lengths;
  for (int n = 1; n <= 64; ++n) lengths.push_back(n);
  lengths.push_back(1000);
  lengths.push_back(4096);
  for (int n : lengths) {
    const auto x = oracle::random_cvec(rng, n);
    const auto y = fft(x);
    double xn = 0.0;
    for (const auto& z : x) xn += std::norm(z);
    xn = std::sqrt(xn);
    if (n <= 1000) {
      const auto ref = oracle::naive_dft(x);
      double err = 0.0;
      for (int k = 0; k < n; ++k) err += std::norm(y[k] - ref[k]);
      CHECK(std::sqrt(err) <= 1e-10 * xn * std::max(1.0, std::sqrt(double(n))));
    }
    const auto back = fft(y, true);
    double rt = 0.0;
    for (int k = 0; k < n; ++k) rt += std::norm(back[k] - x[k]);
    CHECK(std::sqrt(rt) <= 1e-10 * xn);
  }
}

TEST_CASE("polynomial products") {
  const Poly a(std::vector<cplx>{1.0, 1.0}), b(std::vector<cplx>{1.0, -1.0});
  const Poly c = poly_mul(a, b);
  REQUIRE(c.degree() == 2);
  CHECK(std::abs(c.coeffs()[0] - 1.0) < 1e-15);
  CHECK(std::abs(c.coeffs()[1]) < 1e-15);
  CHECK(std::abs(c.coeffs()[2] + 1.0) < 1e-15);
  CHECK(poly_mul(Poly{}, a).is_zero());

  std::mt19937_64 rng(2);
  for (auto [da, db] : {std::pair{7, 9}, {20, 31}, {63, 64}}) {
    const auto x = oracle::random_cvec(rng, da + 1), y = oracle::random_cvec(rng, db + 1);
    const Poly p = poly_mul(Poly(x), Poly(y));
    CHECK(p.degree() == da + db);
    CHECK(oracle::max_diff(p.coeffs(), oracle::schoolbook(x, y)) <= 1e-9);
  }
}

TEST_CASE("trimming") {
  const Poly p(std::vector<cplx>{1.0, 2.0, 1e-20, 0.0});
  CHECK(p.degree() == 1);
  CHECK(Poly(std::vector<cplx>{0.0, 0.0}).is_zero());
  CHECK(Poly{}.degree() == -1);
}

TEST_CASE("reduction modulo a monic polynomial") {
  SUBCASE("x^N mod x^N - 1 = 1") {
    for (int n : {2, 5, 8}) {
      std::vector<double> monic(n + 1, 0.0);
      monic[0] = -1.0;
      monic[n] = 1.0;
      std::vector<cplx> xn(n + 1, 0.0);
      xn[n] = 1.0;
      const Poly r = poly_mod(Poly(xn), monic);
      REQUIRE(r.degree() == 0);
      CHECK(std::abs(r.coeffs()[0] - 1.0) < 1e-15);
    }
  }
  SUBCASE("low degree is unchanged") {
    const std::vector<double> monic{-1.0, 0.0, 0.0, 1.0};
    const Poly a(std::vector<cplx>{3.0, 2.0, 1.0});
    CHECK(poly_mod(a, monic).coeffs() == a.coeffs());
  }
  SUBCASE("x^12 modulo the ladder polynomial") {
    const CharPoly cp = char_poly(decompose(ladder_graph(12)));
    std::vector<cplx> x12(13, 0.0);
    x12[12] = 1.0;
    const Poly r = poly_mod(Poly(x12), cp);
    const auto ref = oracle::long_division_remainder(x12, cp.coeffs);
    CHECK(oracle::max_diff(r.coeffs(), ref) < 1e-12);
    for (int k : {0, 2, 4, 6, 8}) CHECK(std::abs(r.coeffs()[k] - 1.0) < 1e-9);
  }
  SUBCASE("random dividends against long division") {
    std::mt19937_64 rng(3);
    const CharPoly cp = char_poly(decompose(random_digraph(7, rng)));
    for (int deg : {3, 7, 12, 20}) {
      const auto a = oracle::random_cvec(rng, deg + 1);
      CHECK(oracle::max_diff(poly_mod(Poly(a), cp).coeffs(),
                             oracle::long_division_remainder(a, cp.coeffs)) < 1e-9);
    }
  }
  SUBCASE("non-monic modulus is rejected") {
    const std::vector<double> bad{1.0, 2.0};
    CHECK_THROWS_AS(poly_mod(Poly(std::vector<cplx>{1.0, 1.0, 1.0}), bad), InputError);
  }
}

TEST_CASE("convolution on cycles equals circular convolution") {
  std::mt19937_64 rng(4);
  for (int n : {3, 8, 11}) {
    const CompanionModel m = build_model(cycle_graph(n));
    const auto s = oracle::random_cvec(rng, n), t = oracle::random_cvec(rng, n);
    const auto ref = oracle::cyclic_convolution(s, t);
    for (auto method : {ConvMethod::fft, ConvMethod::matrix, ConvMethod::spectral}) {
      const GraphSignal u =
          convolve(m, make_signal(m.d(), from(s)), make_signal(m.d(), from(t)), method);
      CHECK(oracle::max_diff(to(u.values), ref) <= 1e-9);
    }
  }
}

TEST_CASE("convolution identities on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 10;
    const CompanionModel m = build_model(random_digraph(n, rng));
    const GraphSignal s = make_signal(m.d(), from(oracle::random_cvec(rng, n, false)));
    const GraphSignal t = make_signal(m.d(), from(oracle::random_cvec(rng, n, false)));
    const GraphSignal w = make_signal(m.d(), from(oracle::random_cvec(rng, n, false)));
    const double tol = 1e-7 * std::max(1.0, m.cond_vand);

    const auto all = convolve_all(m, s, t);
    CHECK(all.max_discrepancy <= 1e-6 * m.cond_vand * std::max(s.values.norm(), t.values.norm()));

    const GraphSignal delta0 = vertex_impulse(m.d());
    CHECK((convolve(m, s, delta0).values - s.values).norm() <= tol * s.values.norm());

    const CVector st = convolve(m, s, t).values, ts = convolve(m, t, s).values;
    CHECK((st - ts).norm() <= tol * std::max(1.0, st.norm()));

    const GraphSignal stv{st, Rep::vertex, m.id()};
    const GraphSignal twv{convolve(m, t, w).values, Rep::vertex, m.id()};
    const CVector left = convolve(m, stv, w, ConvMethod::spectral).values;
    const CVector right = convolve(m, s, twv, ConvMethod::spectral).values;
    CHECK((left - right).norm() <= tol * std::max(1.0, left.norm()));

    // P_s(A) delta_0 = s
    const CVector p = filter_from_signal(m, s);
    const CVector back = apply_polynomial(m.d().shift.cast<cplx>(),
                                          {p.data(), static_cast<std::size_t>(n)},
                                          delta0.values);
    CHECK((back - s.values).norm() <= tol * s.values.norm());
  }
}

TEST_CASE("filter from signal") {
  const CompanionModel c = build_model(cycle_graph(6));
  std::mt19937_64 rng(6);
  const GraphSignal s = make_signal(c.d(), from(oracle::random_cvec(rng, 6)));
  CHECK((filter_from_signal(c, s) - s.values).norm() < 1e-10);
  CVector e0 = CVector::Zero(6);
  e0[0] = 1.0;
  CHECK((filter_from_signal(c, vertex_impulse(c.d())) - e0).norm() < 1e-10);
  const CompanionModel m = build_model(random_digraph(10, rng));
  const GraphSignal x = make_signal(m.d(), from(oracle::random_cvec(rng, 10, false)));
  const CVector p = filter_from_signal(m, x);
  const CVector back = apply_polynomial(m.d().shift.cast<cplx>(), {p.data(), 10u},
                                        vertex_impulse(m.d()).values);
  CHECK((back - x.values).norm() <= 1e-7);
}

TEST_CASE("linear product below degree N is untouched by the reduction") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 10;
    const CharPoly cp = char_poly(decompose(random_digraph(n, rng)));
    const int da = trial % n;
    const int db = n - 1 - da;
    const Poly prod = poly_mul(Poly(oracle::random_cvec(rng, da + 1)),
                               Poly(oracle::random_cvec(rng, db + 1)));
    const Poly red = poly_mod(prod, cp);
    CHECK(oracle::max_diff(red.coeffs(), prod.coeffs()) <= 1e-12);
  }
}

TEST_CASE("zero padding p_t does not change the convolution") {
  std::mt19937_64 rng(8);
  const CompanionModel m = build_model(random_digraph(8, rng));
  const CVector ps = from(oracle::random_cvec(rng, 8, false));
  const CVector pt = from(oracle::random_cvec(rng, 8, false));
  auto conv = [&](std::vector<cplx> t) {
    const Poly prod = poly_mul(Poly(std::vector<cplx>(ps.data(), ps.data() + 8)), Poly(std::move(t)));
    return poly_mod(prod, m.charpoly).to_vector(8);
  };
  std::vector<cplx> t(pt.data(), pt.data() + 8);
  const CVector base = conv(t);
  t.resize(20, 0.0);
  CHECK((conv(t) - base).norm() == 0.0);
}

TEST_CASE("method names") {
  CHECK(parse_method("matrix") == ConvMethod::matrix);
  CHECK_THROWS_AS(parse_method("direct"), InputError);
}

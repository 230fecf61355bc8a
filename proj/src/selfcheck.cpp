#include "gspc/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gspc/companion.hpp"
#include "gspc/convolution.hpp"
#include "gspc/fft.hpp"
#include "gspc/generators.hpp"
#include "gspc/modulation.hpp"
#include "gspc/poly.hpp"
#include "gspc/sampling.hpp"

namespace gspc {

int SelfcheckReport::failures() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                        [](const CheckEntry& e) { return !e.pass; }));
}

std::string SelfcheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["n_max"] = options.n_max;
  j["seed"] = options.seed;
  j["random_per_size"] = options.random_per_size;
  j["checks"] = entries.size();
  j["failures"] = failures();
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json x;
    x["suite"] = e.suite;
    x["case"] = e.label;
    x["metric"] = e.metric;
    if (e.error.empty()) {
      x["value"] = e.value;
      x["limit"] = e.limit;
    } else {
      x["error"] = e.error;
    }
    x["pass"] = e.pass;
    arr.push_back(std::move(x));
  }
  return j.dump(2) + "\n";
}

namespace {

struct Case {
  std::string label;
  CompanionModel model;
};

class Recorder {
 public:
  explicit Recorder(SelfcheckReport& r) : r_(r) {}

  void check(const std::string& suite, const std::string& label, const std::string& metric,
             double value, double limit) {
    r_.entries.push_back({suite, label, metric, value, limit,
                          std::isfinite(value) && value <= limit, {}});
  }

  void guard(const std::string& suite, const std::string& label, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      r_.entries.push_back({suite, label, "exception", 0.0, 0.0, false, e.what()});
    }
  }

 private:
  SelfcheckReport& r_;
};

CVector random_vector(std::mt19937_64& rng, int n, bool complex_values) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = u(rng);
    v[i] = cplx(re, complex_values ? u(rng) : 0.0);
  }
  return v;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

CVector naive_dft(const CVector& x) {
  const auto n = x.size();
  CVector y = CVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index t = 0; t < n; ++t)
      y[k] += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double((k * t) % n) / double(n));
  return y;
}

CVector bandlimited_q_signal(const CompanionModel& m, std::mt19937_64& rng, int band) {
  CVector q = CVector::Zero(m.size());
  q.head(band) = random_vector(rng, band, false);
  return (m.vand.conjugate() * q) / std::sqrt(double(m.size()));
}

void dsp_suite(Recorder& rec, const SelfcheckOptions& o, std::mt19937_64& rng) {
  const double pi = std::numbers::pi;
  for (int n = 2; n <= std::max(2, o.n_max); ++n) {
    const std::string label = "cycle_" + std::to_string(n);
    rec.guard("dsp", label, [&] {
      const CompanionModel m = build_model(cycle_graph(n), {}, o.tol);
      CMatrix dft(n, n);
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t)
          dft(k, t) = std::polar(1.0 / std::sqrt(double(n)), -2.0 * pi * double((k * t) % n) / n);
      rec.check("dsp", label, "gft_vs_unitary_dft", max_abs(m.d().gft - dft), 1e-9);

      double cp_err = std::abs(m.charpoly.coeffs[0] + 1.0);
      for (int k = 1; k < n; ++k) cp_err = std::max(cp_err, std::abs(m.charpoly.coeffs[k]));
      rec.check("dsp", label, "charpoly_vs_xN_minus_1", cp_err, 1e-9);
      rec.check("dsp", label, "c_comp_vs_cycle", (m.c_comp - m.d().shift).cwiseAbs().maxCoeff(),
                1e-9);

      double p_err = 0.0, q_err = 0.0;
      for (int r = 0; r < 3; ++r) {
        const GraphSignal s = make_signal(m.d(), random_vector(rng, n, true));
        const CVector p = to_representation(m, s, Rep::impulse).values;
        const CVector q = to_representation(m, s, Rep::spectral_impulse).values;
        const CVector shat = to_representation(m, s, Rep::spectrum).values;
        p_err = std::max(p_err, (p - s.values).norm());
        q_err = std::max(q_err, (q - shat).norm());
      }
      rec.check("dsp", label, "p_equals_s", p_err, 1e-8);
      rec.check("dsp", label, "q_equals_shat", q_err, 1e-8);
    });
  }
}

void graph_model_suite(Recorder& rec, const SelfcheckOptions& o, const Case& c,
                       std::mt19937_64& rng) {
  const auto& m = c.model;
  const auto& d = m.d();
  const int n = m.size();
  rec.guard("graph_model", c.label, [&] {
    rec.check("graph_model", c.label, "eig_residual", d.eig_residual, o.tol.eig);
    const double a_norm = d.shift.norm();
    rec.check("graph_model", c.label, "cayley_hamilton",
              cayley_hamilton_residual(d.shift, m.charpoly),
              o.tol.charpoly * std::max(1.0, std::pow(a_norm, n)) * n);

    const CVector coeffs = random_vector(rng, n, false);
    const GraphSignal s = make_signal(d, random_vector(rng, n, false));
    const GraphSignal filtered =
        lsi_filter_apply(d, {coeffs.data(), static_cast<std::size_t>(n)}, s);
    CVector response(n);
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (int j = n - 1; j >= 0; --j) acc = acc * d.lambda[k] + coeffs[j];
      response[k] = acc;
    }
    const CVector lhs = to_spectrum(d, filtered.values);
    const CVector rhs = response.cwiseProduct(to_spectrum(d, s.values));
    rec.check("graph_model", c.label, "filtering_theorem",
              (lhs - rhs).norm() / std::max(1.0, rhs.norm()), o.tol.conv);

    const CVector mod = d.lambda.conjugate().cwiseProduct(s.values);
    const CVector dual = d.m_shift * to_spectrum(d, s.values);
    rec.check("graph_model", c.label, "spectral_shift_duality",
              (to_spectrum(d, mod) - dual).norm() / std::max(1.0, dual.norm()), o.tol.conv);

    const double root_n = std::sqrt(double(n));
    if (!c.label.starts_with("random")) {
      CMatrix unit = delayed_impulses(d, n - 1, 0.0);
      for (Eigen::Index k = 0; k < n; ++k) unit.col(k).normalize();
      rec.check("graph_model", c.label, "impulse_rank_deficit",
                double(n - numerical_rank(unit, o.tol.rank_rel)), 0.0);
    }
    // identity residuals are measured even where the rank diagnostic would fire
    const CMatrix dimp = delayed_impulses(d, n - 1, 0.0);
    rec.check("graph_model", c.label, "impulse_vandermonde",
              (d.gft * dimp - m.vand / root_n).norm(), 1e-7);
    const CMatrix dsp = delayed_spectral_impulses(d, n - 1, 0.0);
    rec.check("graph_model", c.label, "spectral_impulse_vandermonde",
              (d.gft_inv * dsp - m.vand.conjugate() / root_n).norm(), 1e-7);
  });
}

void companion_suite(Recorder& rec, const SelfcheckOptions& o, const Case& c,
                     std::mt19937_64& rng) {
  const auto& m = c.model;
  const auto& d = m.d();
  const int n = m.size();
  rec.guard("companion", c.label, [&] {
    const CMatrix diag = m.vand_lu.solve(CMatrix(d.lambda.asDiagonal() * m.vand));
    rec.check("companion", c.label, "diagonalization",
              (diag - m.c_comp.cast<cplx>()).norm(), o.tol.comp * m.cond_vand);

    double left = 0.0;
    const CMatrix cc = m.c_comp.cast<cplx>();
    for (int i = 0; i < n; ++i) {
      const Eigen::RowVectorXcd row = m.vand.row(i);
      const double scale = 1.0 + row.norm() * std::max(1.0, std::abs(d.lambda[i]));
      left = std::max(left, (row * cc - d.lambda[i] * row).norm() / scale);
    }
    rec.check("companion", c.label, "left_eigenvector", left, o.tol.comp);

    const double slack = o.tol.conv * std::max(1.0, m.cond_vand);
    const GraphSignal s = make_signal(d, random_vector(rng, n, false));
    const double sn = s.values.norm();

    double round = 0.0;
    for (Rep via : {Rep::spectrum, Rep::impulse, Rep::spectral_impulse}) {
      const GraphSignal x = to_representation(m, s, via);
      const GraphSignal back = to_representation(m, x, Rep::vertex);
      round = std::max(round, (back.values - s.values).norm() / sn);
    }
    rec.check("companion", c.label, "round_trip", round, slack);

    const GraphSignal p{random_vector(rng, n, false), Rep::impulse, m.id()};
    const GraphSignal shat = to_representation(m, p, Rep::spectrum);
    const GraphSignal p2 = to_representation(m, shat, Rep::impulse);
    rec.check("companion", c.label, "fourier_pair",
              (p2.values - p.values).norm() / p.values.norm(), slack);

    const GraphSignal ps = to_representation(m, s, Rep::impulse);
    const GraphSignal as = shift_in_rep(m, s, 1);
    const CVector lhs = to_representation(m, as, Rep::impulse).values;
    const CVector rhs = shift_in_rep(m, ps, 1).values;
    rec.check("companion", c.label, "shift_commutes_p",
              (lhs - rhs).norm() / std::max(1.0, rhs.norm()), slack);

    const GraphSignal sh = to_representation(m, s, Rep::spectrum);
    const GraphSignal msh = shift_in_rep(m, sh, 1);
    const CVector lq = to_representation(m, msh, Rep::spectral_impulse).values;
    const CVector rq =
        shift_in_rep(m, to_representation(m, s, Rep::spectral_impulse), 1).values;
    rec.check("companion", c.label, "shift_commutes_q",
              (lq - rq).norm() / std::max(1.0, rq.norm()), slack);
  });
}

void interp_suite(Recorder& rec, const Case& c, std::mt19937_64& rng, double limit) {
  const auto& m = c.model;
  rec.guard("interp", c.label, [&] {
    const GraphSignal s = make_signal(m.d(), random_vector(rng, m.size(), false));
    ConversionDiagnostics diag;
    to_representation(m, s, Rep::impulse, ConversionPath::interpolation, &diag);
    rec.check("interp", c.label, "recover_p_mse", diag.mse, limit);
    to_representation(m, s, Rep::spectral_impulse, ConversionPath::interpolation, &diag);
    rec.check("interp", c.label, "recover_q_mse", diag.mse, limit);
  });
}

void fft_suite(Recorder& rec) {
  rec.guard("fftpoly", "lengths_1_64", [&] {
    std::mt19937_64 rng(7);
    double worst = 0.0, round = 0.0;
    for (int len = 1; len <= 64; ++len) {
      const CVector x = random_vector(rng, len, true);
      const CVector y = fft(x);
      worst = std::max(worst, (y - naive_dft(x)).norm() / x.norm());
      round = std::max(round, (fft(y, true) - x).norm() / x.norm());
    }
    rec.check("fftpoly", "lengths_1_64", "fft_vs_naive_dft", worst, 1e-10);
    rec.check("fftpoly", "lengths_1_64", "fft_round_trip", round, 1e-10);
  });
}

void convolution_suite(Recorder& rec, const SelfcheckOptions& o, const Case& c,
                       std::mt19937_64& rng) {
  const auto& m = c.model;
  const int n = m.size();
  rec.guard("fftpoly", c.label, [&] {
    const GraphSignal s = make_signal(m.d(), random_vector(rng, n, false));
    const GraphSignal t = make_signal(m.d(), random_vector(rng, n, false));
    const auto cmp = convolve_all(m, s, t);
    rec.check("fftpoly", c.label, "three_path_discrepancy", cmp.max_discrepancy,
              1e-6 * std::max(1.0, m.cond_vand) * std::max(s.values.norm(), t.values.norm()));

    const GraphSignal delta0 = vertex_impulse(m.d());
    const GraphSignal id = convolve(m, s, delta0);
    rec.check("fftpoly", c.label, "delta_identity",
              (id.values - s.values).norm() / s.values.norm(),
              o.tol.conv * std::max(1.0, m.cond_vand));

    const int da = n / 2;
    const int db = n - 1 - da;
    const CVector av = random_vector(rng, da + 1, false);
    const CVector bv = random_vector(rng, db + 1, false);
    const Poly pa(std::vector<cplx>(av.data(), av.data() + av.size()));
    const Poly pb(std::vector<cplx>(bv.data(), bv.data() + bv.size()));
    const Poly prod = poly_mul(pa, pb);
    const Poly red = poly_mod(prod, m.charpoly);
    rec.check("fftpoly", c.label, "linear_equals_mod",
              (red.to_vector(n) - prod.to_vector(n)).cwiseAbs().maxCoeff(), 1e-12);
  });
}

void modulation_suite(Recorder& rec, const Case& c, std::mt19937_64& rng) {
  const auto& m = c.model;
  const int n = m.size();
  if (m.d().has_zero_eigenvalue()) return;
  rec.guard("modulation", c.label, [&] {
    const int band = std::max(1, n / 3);
    const int count = n / band;
    const MultiplexPlan plan = make_plan(m, band, count);
    std::vector<GraphSignal> inputs;
    for (int i = 0; i < count; ++i)
      inputs.push_back(make_signal(m.d(), bandlimited_q_signal(m, rng, band)));
    const GraphSignal d = multiplex(m, plan, inputs);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const GraphSignal back = demultiplex(m, plan, d, i);
      worst = std::max(worst, (back.values - inputs[i].values).norm() / inputs[i].values.norm());
    }
    rec.check("modulation", c.label, "multiplex_round_trip", worst,
              1e-6 * std::max(1.0, m.cond_vand));
    const SpectralView view = spectral_view(m, plan, d, inputs);
    rec.check("modulation", c.label, "spectral_view_sum",
              view.discrepancy / std::max(1.0, view.dhat.values.norm()),
              1e-7 * std::max(1.0, m.cond_vand));
  });
}

std::vector<int> conj_closed_selection(const CompanionModel& m, int offset, int target) {
  const int n = m.size();
  std::vector<int> delta(n, 0);
  int kept = 0;
  for (int step = 0; step < n && kept < target; ++step) {
    const int i = (offset + 2 * step) % n;
    if (delta[i]) continue;
    const int j = m.d().pairing[i];
    const int add = (i == j) ? 1 : 2;
    if (kept + add > target) continue;
    delta[i] = delta[j] = 1;
    kept += add;
  }
  return delta;
}

void sampling_suite(Recorder& rec, const SelfcheckOptions& o, const Case& c,
                    std::mt19937_64& rng) {
  const auto& m = c.model;
  const int n = m.size();
  if (n < 3) return;
  rec.guard("sampling", c.label, [&] {
    for (int offset = 0; offset < n; ++offset) {
      const auto delta = conj_closed_selection(m, offset, n / 2);
      const DecimationPlan plan = make_decimation_plan(m, delta);
      if (!plan.conj_closed) continue;
      Decimation dec;
      try {
        dec = decimate(m, plan);
      } catch (const AssumptionError&) {
        continue;
      }
      const double cond = std::max(dec.cond_gft_block, dec.cond_vand_block);
      if (!(cond < 1e8)) continue;
      const double limit = o.tol.comp * cond;
      const CVector lc = dec.lambda_d.conjugate();
      const std::string label = c.label + "/offset_" + std::to_string(offset);
      rec.check("sampling", label, "cospectral_a_d", spectrum_distance(dec.a_d, dec.lambda_d),
                limit);
      rec.check("sampling", label, "cospectral_m_d", spectrum_distance(dec.m_d, lc), limit);
      rec.check("sampling", label, "cospectral_c_d", spectrum_distance(dec.c_d, lc), limit);
      rec.check("sampling", label, "c_d_imag", dec.c_d_imag, limit);
      rec.check("sampling", label, "c_d_companion", dec.companion_error, limit);

      CVector coeffs = CVector::Zero(n);
      coeffs.head(plan.k) = random_vector(rng, plan.k, true);
      const GraphSignal s = make_signal(m.d(), m.d().gft_inv * coeffs);
      const ReconstructionCheck rc = check_reconstruction(m, plan, s);
      rec.check("sampling", label, "reconstruction", rc.error,
                o.tol.conv * std::max(1.0, dec.cond_gft_block));
      return;
    }
  });
}

}  // namespace

SelfcheckReport run_selfcheck(const SelfcheckOptions& opts) {
  if (opts.n_max < 2) throw InputError("n_max must be >= 2");
  SelfcheckReport report;
  report.options = opts;
  Recorder rec(report);
  std::mt19937_64 rng(opts.seed);

  dsp_suite(rec, opts, rng);
  fft_suite(rec);

  std::vector<Case> cases;
  for (int n = 2; n <= opts.n_max; ++n) {
    const std::string label = "cycle_" + std::to_string(n);
    rec.guard("build", label, [&] {
      cases.push_back({label, build_model(cycle_graph(n), {}, opts.tol)});
    });
  }
  for (int n = 4; n <= opts.n_max; n += 2) {
    const std::string label = "ladder_" + std::to_string(n);
    rec.guard("build", label, [&] {
      cases.push_back({label, build_model(ladder_graph(n), {}, opts.tol)});
    });
  }
  for (int n = 3; n <= opts.n_max; ++n) {
    for (int r = 0; r < opts.random_per_size; ++r) {
      const std::string label = "random_" + std::to_string(n) + "_" + std::to_string(r);
      rec.guard("build", label, [&] {
        cases.push_back({label, build_model(random_digraph(n, rng), {}, opts.tol)});
      });
    }
  }

  for (const Case& c : cases) {
    graph_model_suite(rec, opts, c, rng);
    companion_suite(rec, opts, c, rng);
    interp_suite(rec, c, rng, c.label.starts_with("ladder") ? 1e-2 : 1e-6);
    convolution_suite(rec, opts, c, rng);
    modulation_suite(rec, c, rng);
    sampling_suite(rec, opts, c, rng);
  }
  return report;
}

}  // namespace gspc

// gspc: command-line front end for the companion-model toolkit.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gspc/companion.hpp"
#include "gspc/convolution.hpp"
#include "gspc/graph_io.hpp"
#include "gspc/modulation.hpp"
#include "gspc/sampling.hpp"
#include "gspc/selfcheck.hpp"

using nlohmann::json;

namespace {

struct Config {
  double eig_tol = gspc::Tolerances{}.eig;
  double conv_tol = gspc::Tolerances{}.conv;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  std::string order;
};

gspc::Tolerances tolerances(const Config& c) {
  gspc::Tolerances t;
  t.eig = c.eig_tol;
  t.conv = c.conv_tol;
  return t;
}

gspc::EigenOrder parse_order(const std::string& s, gspc::EigenOrder fallback) {
  if (s.empty()) return fallback;
  if (s == "canonical") return gspc::EigenOrder::canonical;
  if (s == "solver") return gspc::EigenOrder::solver;
  throw gspc::InputError("unknown eigenvalue order '" + s + "'");
}

gspc::CompanionModel load_model(const Config& c, const std::string& path,
                                gspc::EigenOrder fallback = gspc::EigenOrder::canonical) {
  const gspc::ShiftGraph g = gspc::load_graph(path);
  gspc::DecomposeOptions opts;
  opts.eig_tol = c.eig_tol;
  opts.order = parse_order(c.order, fallback);
  return gspc::build_model(g, opts, tolerances(c));
}

gspc::GraphSignal load_signal_for(const gspc::CompanionModel& m, const std::string& path,
                                  gspc::Rep rep = gspc::Rep::vertex) {
  gspc::CVector v = gspc::load_signal(path);
  if (v.size() != m.size()) {
    std::ostringstream os;
    os << path << ": signal has " << v.size() << " samples, graph has " << m.size()
       << " vertices";
    throw gspc::InputError(os.str());
  }
  return gspc::make_signal(m.d(), std::move(v), rep);
}

void emit_text(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw gspc::InputError("cannot write " + c.out);
  f << text;
}

void emit(const Config& c, const json& j) { emit_text(c, j.dump(2) + "\n"); }

std::string signal_csv(const gspc::CVector& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << v[i].real() << "," << v[i].imag() << "\n";
  return os.str();
}

void emit_signal(const Config& c, const gspc::GraphSignal& s, json meta) {
  if (c.format == "csv") {
    emit_text(c, signal_csv(s.values));
    return;
  }
  if (c.format != "json") throw gspc::InputError("signals can be written as json or csv");
  meta["rep"] = gspc::rep_name(s.rep);
  meta["values"] = gspc::to_json(s.values);
  emit(c, meta);
}

json charpoly_json(const gspc::CharPoly& cp) {
  json j;
  j["coeffs"] = cp.coeffs;
  j["imag_residual"] = cp.imag_residual;
  return j;
}

json plan_from_arg(const std::string& arg) {
  if (arg.empty()) throw gspc::InputError("--plan is required");
  if (arg.front() == '{') return json::parse(arg);
  std::ifstream f(arg);
  if (!f) throw gspc::InputError("cannot read plan " + arg);
  return json::parse(f);
}

gspc::MultiplexPlan make_plan(const gspc::CompanionModel& m, const std::string& arg) {
  const json j = plan_from_arg(arg);
  if (!j.contains("B") || !j.contains("K")) throw gspc::InputError("plan needs \"B\" and \"K\"");
  return gspc::make_plan(m, j.at("B").get<int>(), j.at("K").get<int>());
}

int cmd_analyze(const Config& c, const std::string& graph, bool dot) {
  const gspc::ShiftGraph g = gspc::load_graph(graph);
  gspc::DecomposeOptions opts;
  opts.eig_tol = c.eig_tol;
  opts.order = parse_order(c.order, gspc::EigenOrder::canonical);
  const gspc::CompanionModel m = gspc::build_model(g, opts, tolerances(c));
  if (dot || c.format == "dot") {
    emit_text(c, gspc::companion_graph_dot(m));
    return 0;
  }
  json j;
  j["n"] = m.size();
  j["strongly_connected"] = g.strongly_connected();
  j["components"] = g.component_count();
  j["zero_eigenvalue"] = m.d().has_zero_eigenvalue();
  j["eigenvalues"] = gspc::to_json(m.d().lambda);
  j["min_gap"] = m.d().min_gap;
  j["eig_residual"] = m.d().eig_residual;
  j["charpoly"] = charpoly_json(m.charpoly);
  j["cayley_hamilton_residual"] = gspc::cayley_hamilton_residual(m.d().shift, m.charpoly);
  j["companion"] = gspc::to_json(m.c_comp);
  const gspc::RVector w = m.boundary_weights();
  j["boundary_weights"] = std::vector<double>(w.data(), w.data() + w.size());
  j["cond_vand"] = m.cond_vand;
  emit(c, j);
  return 0;
}

int cmd_transform(const Config& c, const std::string& graph, const std::string& signal,
                  const std::string& from, const std::string& to, bool dense) {
  const gspc::CompanionModel m = load_model(c, graph);
  const gspc::GraphSignal s = load_signal_for(m, signal, gspc::parse_rep(from));
  gspc::ConversionDiagnostics diag;
  const gspc::GraphSignal out =
      gspc::to_representation(m, s, gspc::parse_rep(to),
                              dense ? gspc::ConversionPath::dense
                                    : gspc::ConversionPath::interpolation,
                              &diag);
  std::cerr << "mse " << diag.mse << "\n";
  json meta;
  meta["mse"] = diag.mse;
  meta["imag_discarded"] = diag.imag_discarded;
  emit_signal(c, out, meta);
  return 0;
}

int cmd_convolve(const Config& c, const std::string& graph, const std::string& sp,
                 const std::string& tp, const std::string& method) {
  const gspc::CompanionModel m = load_model(c, graph);
  const gspc::GraphSignal s = load_signal_for(m, sp);
  const gspc::GraphSignal t = load_signal_for(m, tp);
  if (method == "all") {
    const auto cmp = gspc::convolve_all(m, s, t);
    std::cerr << "max discrepancy " << cmp.max_discrepancy << "\n";
    if (c.format == "csv") {
      emit_text(c, signal_csv(cmp.fft.values));
      return 0;
    }
    json j;
    j["fft"] = gspc::to_json(cmp.fft.values);
    j["matrix"] = gspc::to_json(cmp.matrix.values);
    j["spectral"] = gspc::to_json(cmp.spectral.values);
    j["max_discrepancy"] = cmp.max_discrepancy;
    j["cond_vand"] = m.cond_vand;
    emit(c, j);
    return 0;
  }
  const gspc::GraphSignal u = gspc::convolve(m, s, t, gspc::parse_method(method));
  json meta;
  meta["method"] = method;
  emit_signal(c, u, meta);
  return 0;
}

int cmd_modulate(const Config& c, const std::string& graph,
                 const std::vector<std::string>& signals, const std::string& plan_arg,
                 int power) {
  const gspc::CompanionModel m = load_model(c, graph);
  std::vector<gspc::GraphSignal> inputs;
  for (const auto& p : signals) inputs.push_back(load_signal_for(m, p));
  if (plan_arg.empty()) {
    if (inputs.size() != 1) throw gspc::InputError("without --plan give exactly one signal");
    json meta;
    meta["power"] = power;
    emit_signal(c, gspc::modulate(m, inputs[0], power), meta);
    return 0;
  }
  const gspc::MultiplexPlan plan = make_plan(m, plan_arg);
  const gspc::GraphSignal d = gspc::multiplex(m, plan, inputs);
  if (c.format == "csv") {
    emit_text(c, signal_csv(d.values));
    return 0;
  }
  const gspc::GraphSignal q = gspc::to_representation(m, d, gspc::Rep::spectral_impulse);
  const gspc::SpectralView view = gspc::spectral_view(m, plan, d, inputs);
  json j;
  j["B"] = plan.band;
  j["K"] = plan.count;
  j["rep"] = "s";
  j["values"] = gspc::to_json(d.values);
  j["q"] = gspc::to_json(q.values);
  j["spectrum"] = gspc::to_json(view.dhat.values);
  j["spectral_view_discrepancy"] = view.discrepancy;
  emit(c, j);
  return 0;
}

int cmd_demodulate(const Config& c, const std::string& graph, const std::string& signal,
                   const std::string& plan_arg, int index, bool by_carrier) {
  const gspc::CompanionModel m = load_model(c, graph);
  const gspc::GraphSignal d = load_signal_for(m, signal);
  const gspc::MultiplexPlan plan = make_plan(m, plan_arg);
  auto one = [&](int i) {
    return by_carrier ? gspc::demultiplex_by_carrier(m, plan, d, i)
                      : gspc::demultiplex(m, plan, d, i);
  };
  if (index >= 0) {
    json meta;
    meta["index"] = index;
    emit_signal(c, one(index), meta);
    return 0;
  }
  if (c.format == "csv") throw gspc::InputError("csv output needs --index");
  json j;
  j["B"] = plan.band;
  j["K"] = plan.count;
  j["signals"] = json::array();
  for (int i = 0; i < plan.count; ++i) j["signals"].push_back(gspc::to_json(one(i).values));
  emit(c, j);
  return 0;
}

std::vector<int> load_delta(const std::string& arg) {
  json j;
  if (!arg.empty() && arg.front() == '[') {
    j = json::parse(arg);
  } else {
    std::ifstream f(arg);
    if (!f) throw gspc::InputError("cannot read indicator " + arg);
    j = json::parse(f);
  }
  if (j.is_object() && j.contains("delta")) j = j.at("delta");
  if (!j.is_array()) throw gspc::InputError("indicator must be a JSON array of 0/1");
  return j.get<std::vector<int>>();
}

int cmd_sample(const Config& c, const std::string& graph, const std::string& delta_arg,
               const std::string& signal, const std::string& flavor) {
  // delta indexes eigenvalues in solver order unless --order says otherwise
  const gspc::CompanionModel m = load_model(c, graph, gspc::EigenOrder::solver);
  const gspc::DecimationPlan plan = gspc::make_decimation_plan(m, load_delta(delta_arg));
  const gspc::Decimation dec = gspc::decimate(m, plan);
  if (c.format != "json") throw gspc::InputError("sample writes json only");

  json j;
  j["K"] = plan.k;
  j["kept"] = plan.kept;
  j["conj_closed"] = plan.conj_closed;
  j["eigenvalues"] = gspc::to_json(dec.lambda_d);
  j["A_d"] = gspc::to_json(dec.a_d);
  j["M_d"] = gspc::to_json(dec.m_d);
  if (dec.c_d_real) {
    j["C_d"] = gspc::to_json(*dec.c_d_real);
    j["C_d_companion_error"] = dec.companion_error;
  } else {
    j["C_d"] = gspc::to_json(dec.c_d);
  }
  j["C_d_imag"] = dec.c_d_imag;
  j["cond_gft_block"] = dec.cond_gft_block;
  j["cond_vand_block"] = dec.cond_vand_block;
  const gspc::CVector lc = dec.lambda_d.conjugate();
  j["cospectral"] = {{"A_d", gspc::spectrum_distance(dec.a_d, dec.lambda_d)},
                     {"M_d", gspc::spectrum_distance(dec.m_d, lc)},
                     {"C_d", gspc::spectrum_distance(dec.c_d, lc)}};
  if (!signal.empty()) {
    const gspc::BandFlavor f =
        flavor == "q" ? gspc::BandFlavor::q
        : flavor == "spectral" ? gspc::BandFlavor::spectral
        : throw gspc::InputError("unknown flavor '" + flavor + "'");
    const gspc::GraphSignal s = load_signal_for(m, signal);
    const gspc::ReconstructionCheck rc = gspc::check_reconstruction(m, plan, s, f);
    gspc::CVector sampled(plan.k);
    for (int i = 0; i < plan.k; ++i) sampled[i] = s.values[plan.kept[i]];
    j["reconstruction"] = {{"values", gspc::to_json(gspc::reconstruct(m, plan, sampled, f).values)},
                           {"input_leakage", rc.input_leakage},
                           {"error", rc.error}};
  }
  emit(c, j);
  return 0;
}

int cmd_selfcheck(const Config& c, int n_max) {
  gspc::SelfcheckOptions o;
  o.n_max = n_max;
  o.seed = c.seed;
  o.tol = tolerances(c);
  const gspc::SelfcheckReport r = gspc::run_selfcheck(o);
  emit_text(c, r.to_json());
  std::cerr << r.entries.size() << " checks, " << r.failures() << " failures\n";
  return r.failures() == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph signal processing with the companion model"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--eig-tol", cfg.eig_tol, "Eigen residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--conv-tol", cfg.conv_tol, "Conversion tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "dot"}));
  app.add_option("-o,--out", cfg.out, "Write output to a file instead of stdout");
  app.add_option("--order", cfg.order, "Eigenvalue order: canonical or solver")
      ->check(CLI::IsMember({"canonical", "solver"}));

  std::string graph, signal, signal2, to = "p", from = "s", method = "fft", plan, delta,
                                      flavor = "spectral";
  std::vector<std::string> signals;
  bool dot = false, dense = false, by_carrier = false;
  int power = 1, index = -1, n_max = 12;

  auto* analyze = app.add_subcommand("analyze", "Spectrum, characteristic polynomial, companion");
  analyze->add_option("graph", graph)->required();
  analyze->add_flag("--dot", dot, "Print the companion graph as DOT");

  auto* transform = app.add_subcommand("transform", "Convert a signal between s, hat, p, q");
  transform->add_option("graph", graph)->required();
  transform->add_option("signal", signal)->required();
  transform->add_option("--to", to)->check(CLI::IsMember({"s", "hat", "p", "q"}));
  transform->add_option("--from", from)->check(CLI::IsMember({"s", "hat", "p", "q"}));
  transform->add_flag("--dense", dense, "Solve with the Vandermonde matrix directly");

  auto* convolve = app.add_subcommand("convolve", "Graph circular convolution");
  convolve->add_option("graph", graph)->required();
  convolve->add_option("s", signal)->required();
  convolve->add_option("t", signal2)->required();
  convolve->add_option("--method", method)
      ->check(CLI::IsMember({"fft", "matrix", "spectral", "all"}));

  auto* modulate = app.add_subcommand("modulate", "Carrier modulation or multiplexing");
  modulate->add_option("graph", graph)->required();
  modulate->add_option("signals", signals)->required();
  modulate->add_option("--plan", plan, "JSON {\"B\": int, \"K\": int} or a file holding it");
  modulate->add_option("--power", power, "Carrier power without a plan")
      ->check(CLI::NonNegativeNumber);

  auto* demodulate = app.add_subcommand("demodulate", "Recover multiplexed signals");
  demodulate->add_option("graph", graph)->required();
  demodulate->add_option("signal", signal)->required();
  demodulate->add_option("--plan", plan)->required();
  demodulate->add_option("--index", index, "Single slot to recover (default: all)");
  demodulate->add_flag("--by-carrier", by_carrier, "Divide by the carrier instead");

  auto* sample = app.add_subcommand("sample", "Companion-model decimation");
  sample->add_option("graph", graph)->required();
  sample->add_option("delta", delta, "JSON 0/1 array or a file holding it")->required();
  sample->add_option("--signal", signal, "Bandlimited signal to sample and reconstruct");
  sample->add_option("--flavor", flavor)->check(CLI::IsMember({"spectral", "q"}));

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suites");
  selfcheck->add_option("--n-max", n_max)->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, graph, dot);
    if (*transform) return cmd_transform(cfg, graph, signal, from, to, dense);
    if (*convolve) return cmd_convolve(cfg, graph, signal, signal2, method);
    if (*modulate) return cmd_modulate(cfg, graph, signals, plan, power);
    if (*demodulate) return cmd_demodulate(cfg, graph, signal, plan, index, by_carrier);
    if (*sample) return cmd_sample(cfg, graph, delta, signal, flavor);
    if (*selfcheck) return cmd_selfcheck(cfg, n_max);
  } catch (const gspc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

#include "gspc/modulation.hpp"

#include <cmath>
#include <sstream>

namespace gspc {

std::vector<int> MultiplexPlan::carrier_powers() const {
  std::vector<int> p(count);
  for (int i = 0; i < count; ++i) p[i] = band * i;
  return p;
}

MultiplexPlan make_plan(const CompanionModel& m, int band, int count) {
  if (band < 1) throw InputError("band B must be >= 1");
  if (count < 1) throw InputError("count K must be >= 1");
  if (static_cast<long>(band) * count > m.size()) {
    std::ostringstream os;
    os << "K*B = " << band * count << " exceeds N = " << m.size()
       << "; the shifted bands would wrap through the boundary column";
    throw InputError(os.str());
  }
  if (m.d().has_zero_eigenvalue())
    throw AssumptionError("multiplexing needs nonzero eigenvalues");
  return MultiplexPlan{band, count, m.id()};
}

namespace {

void require_plan(const CompanionModel& m, const MultiplexPlan& plan) {
  if (plan.model_id != m.id()) throw InputError("plan belongs to a different model");
}

void require_vertex(const GraphSignal& s) {
  if (s.rep != Rep::vertex) throw InputError("expected a vertex-domain signal");
}

CVector q_of(const CompanionModel& m, const GraphSignal& s) {
  return to_representation(m, s, Rep::spectral_impulse).values;
}

GraphSignal from_q(const CompanionModel& m, CVector q) {
  return to_representation(m, GraphSignal{std::move(q), Rep::spectral_impulse, m.id()},
                           Rep::vertex);
}

double tail_ratio(const CVector& q, int band) {
  const double total = q.norm();
  if (total == 0.0) return 0.0;
  return q.tail(q.size() - band).norm() / total;
}

CVector carrier(const CompanionModel& m, int power) {
  const CVector base = m.d().lambda.conjugate();
  CVector c = CVector::Ones(base.size());
  for (int k = 0; k < power; ++k) c = c.cwiseProduct(base);
  return c;
}

}  // namespace

BandCheck is_q_bandlimited(const CompanionModel& m, const GraphSignal& sig, int band,
                           double band_tol) {
  if (band < 1 || band > m.size()) throw InputError("band out of range");
  const double leak = tail_ratio(q_of(m, sig), band);
  return BandCheck{leak <= band_tol, leak};
}

GraphSignal modulate(const CompanionModel& m, const GraphSignal& s, int power) {
  require_model(m, s);
  require_vertex(s);
  if (power < 0) throw InputError("carrier power must be non-negative");
  return GraphSignal{carrier(m, power).cwiseProduct(s.values), Rep::vertex, m.id()};
}

GraphSignal multiplex(const CompanionModel& m, const MultiplexPlan& plan,
                      const std::vector<GraphSignal>& signals) {
  require_plan(m, plan);
  if (static_cast<int>(signals.size()) != plan.count) {
    std::ostringstream os;
    os << "plan expects " << plan.count << " signals, got " << signals.size();
    throw InputError(os.str());
  }
  CVector d = CVector::Zero(m.size());
  const auto powers = plan.carrier_powers();
  for (int i = 0; i < plan.count; ++i) {
    require_model(m, signals[i]);
    require_vertex(signals[i]);
    const BandCheck bc = is_q_bandlimited(m, signals[i], plan.band, m.tol.band);
    if (!bc.bandlimited) {
      std::ostringstream os;
      os << "signal " << i << " leaks " << bc.leakage << " of its q energy past B = "
         << plan.band << "; bands would overlap";
      throw AssumptionError(os.str());
    }
    d += modulate(m, signals[i], powers[i]).values;
  }
  return GraphSignal{std::move(d), Rep::vertex, m.id()};
}

GraphSignal demultiplex(const CompanionModel& m, const MultiplexPlan& plan,
                        const GraphSignal& d, int index) {
  require_plan(m, plan);
  require_model(m, d);
  require_vertex(d);
  if (index < 0 || index >= plan.count) throw InputError("demultiplex index out of range");
  const CVector qd = q_of(m, d);
  CVector q = CVector::Zero(m.size());
  q.head(plan.band) = qd.segment(plan.band * index, plan.band);
  return from_q(m, std::move(q));
}

GraphSignal demultiplex_by_carrier(const CompanionModel& m, const MultiplexPlan& plan,
                                   const GraphSignal& d, int index) {
  require_plan(m, plan);
  require_model(m, d);
  require_vertex(d);
  if (index < 0 || index >= plan.count) throw InputError("demultiplex index out of range");
  // band-pass first: the inverse line shift of a lone block never reaches the boundary column
  const CVector qd = q_of(m, d);
  CVector q = CVector::Zero(m.size());
  q.segment(plan.band * index, plan.band) = qd.segment(plan.band * index, plan.band);
  const CVector inv = carrier(m, plan.band * index).cwiseInverse();
  return GraphSignal{inv.cwiseProduct(from_q(m, std::move(q)).values), Rep::vertex, m.id()};
}

Projection bandlimit_project(const CompanionModel& m, const GraphSignal& s, int band) {
  require_model(m, s);
  if (band < 1 || band > m.size()) throw InputError("band out of range");
  CVector q = q_of(m, s);
  const double loss = tail_ratio(q, band);
  q.tail(q.size() - band).setZero();
  return Projection{from_q(m, std::move(q)), loss};
}

SpectralView spectral_view(const CompanionModel& m, const MultiplexPlan& plan,
                           const GraphSignal& d, const std::vector<GraphSignal>& signals) {
  require_plan(m, plan);
  require_model(m, d);
  require_vertex(d);
  SpectralView v{GraphSignal{m.d().gft * d.values, Rep::spectrum, m.id()}, 0.0};
  if (signals.empty()) return v;
  CVector sum = CVector::Zero(m.size());
  const auto powers = plan.carrier_powers();
  for (std::size_t i = 0; i < signals.size() && i < powers.size(); ++i) {
    const GraphSignal shat = to_representation(m, signals[i], Rep::spectrum);
    sum += shift_in_rep(m, shat, powers[i]).values;
  }
  v.discrepancy = (v.dhat.values - sum).norm();
  return v;
}

}  // namespace gspc

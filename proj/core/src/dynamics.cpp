#include "nematic/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "etd.hpp"
#include "nematic/errors.hpp"

namespace nematic {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (dt > t_final) throw std::invalid_argument("dt must not exceed t_final");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double s = snapshot_times[i];
    if (s < 0.0 || s > t_final * (1.0 + 1e-12)) {
      throw std::invalid_argument("snapshot times must lie in [0, t_final]");
    }
    if (i > 0 && !(s > snapshot_times[i - 1])) {
      throw std::invalid_argument("snapshot times must be strictly increasing");
    }
  }
}

double blowup_threshold(const ModelParams& p) { return 30.0 * (1.0 + std::abs(lambda_star(p))); }

namespace {

using detail::EtdIntegrator;

EtdIntegrator<5>::Nonlinear tensor_nonlinearity(const Kinetics& k) {
  if (!k.active()) return {};
  return [k](const TensorField& u, double, TensorField& out) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const TracelessSym3 q = tensor_at(u, i);
      TracelessSym3 n = k.b * traceless_square(q);
      n -= (k.c * trace_sq(q)) * q;
      set_tensor(out, i, n);
    }
  };
}

EtdIntegrator<5>::Nonlinear transformed_nonlinearity(const Kinetics& k) {
  if (!k.active()) return {};
  return [k](const TensorField& u, double t, TensorField& out) {
    for (std::size_t i = 0; i < u.size(); ++i) set_tensor(out, i, nonlinearity_h(tensor_at(u, i), t, k));
  };
}

EtdIntegrator<1>::Nonlinear scalar_nonlinearity(const Kinetics& k) {
  if (!k.active()) return {};
  return [k](const ScalarField& u, double, ScalarField& out) {
    auto in = u.plane(0);
    auto o = out.plane(0);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double l = in[i];
      o[i] = -l * l * (k.b + 6.0 * k.c * l);
    }
  };
}

/// Diagnostics of the physical field Q = scale * state, read off the
/// integrator's spectral and real state.
template <std::size_t N>
DiagnosticSample diagnose(const EtdIntegrator<N>& integ, double scale, const Kinetics& k) {
  const auto& sg = integ.spectral();
  const auto k2 = sg.k2();
  const auto mult = sg.multiplicity();
  const auto& u = integ.state();
  double grad = 0.0;
  if constexpr (N == 5) {
    const auto &s0 = integ.spectrum(0), &s1 = integ.spectrum(1);
    for (std::size_t i = 0; i < k2.size(); ++i) {
      const double w = mult[i] * k2[i];
      if (w == 0.0) continue;
      grad += w * (std::norm(s0[i]) + std::norm(s1[i]) + std::norm(s0[i] + s1[i]) +
                   2.0 * (std::norm(integ.spectrum(2)[i]) + std::norm(integ.spectrum(3)[i]) +
                          std::norm(integ.spectrum(4)[i])));
    }
  } else {
    const auto& s0 = integ.spectrum(0);
    for (std::size_t i = 0; i < k2.size(); ++i) grad += 6.0 * mult[i] * k2[i] * std::norm(s0[i]);
  }
  const double vol = u.grid().cell_volume();
  grad *= scale * scale * vol / static_cast<double>(u.size());

  double bulk = 0.0, l2 = 0.0, linf = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    TracelessSym3 q;
    if constexpr (N == 5) {
      q = scale * tensor_at(u, i);
    } else {
      q = make_uniaxial(scale * u(0, i));
    }
    const double m2 = trace_sq(q);
    l2 += m2;
    linf = std::max(linf, m2);
    if (k.active()) bulk += bulk_energy_density(q, k);
  }
  return {u.time(), 0.5 * grad + bulk * vol, std::sqrt(l2 * vol), std::sqrt(linf)};
}

template <std::size_t N>
void check_state(const EtdIntegrator<N>& integ, double, const Kinetics& k, double limit,
                 double linf) {
  const auto& u = integ.state();
  if (!u.all_finite()) {
    std::ostringstream msg;
    msg << "nonfinite values at t = " << u.time();
    throw NumericAbort(msg.str(), u.time());
  }
  if (k.active() && linf > limit) {
    std::ostringstream msg;
    msg << "amplitude " << linf << " exceeds blow-up threshold " << limit << " at t = " << u.time();
    throw NumericAbort(msg.str(), u.time());
  }
}

/// Advances `integ` from the field's time tag to cfg.t_final, landing exactly
/// on every snapshot time. `decay_rate` maps state to physical field via
/// Q = e^{-decay_rate t} state (nonzero only for the transformed equation).
template <std::size_t N>
Trajectory<GridField<N>> run(EtdIntegrator<N>& integ, const GridField<N>& u0, const ModelParams& p,
                             const SimConfig& cfg, const Kinetics& k, double decay_rate,
                             bool transformed) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw std::invalid_argument("initial field grid does not match the run grid");
  const double t_start = u0.time();
  if (t_start >= cfg.t_final) throw std::invalid_argument("initial time tag is not before t_final");
  if (!cfg.snapshot_times.empty() && cfg.snapshot_times.front() < t_start - 1e-12) {
    throw std::invalid_argument("snapshot time precedes the initial time tag");
  }

  Trajectory<GridField<N>> traj{cfg, p, {}, {}, transformed};
  const double limit = k.active() ? blowup_threshold(p) : 0.0;
  integ.reset(u0);

  auto scale_at = [decay_rate](double t) { return std::exp(-decay_rate * t); };
  auto record = [&] {
    const double s = scale_at(integ.state().time());
    auto d = diagnose(integ, s, k);
    check_state(integ, s, k, limit, d.linfnorm);
    traj.diagnostics.push_back(d);
  };

  record();
  auto snap = cfg.snapshot_times.begin();
  auto take_snapshot_if_due = [&] {
    if (snap != cfg.snapshot_times.end() && std::abs(*snap - integ.state().time()) <= 1e-12 * (1.0 + *snap)) {
      traj.snapshots.push_back(integ.state());
      traj.snapshots.back().set_time(*snap);
      ++snap;
    }
  };
  take_snapshot_if_due();

  double t = t_start;
  while (t < cfg.t_final) {
    const double target = (snap != cfg.snapshot_times.end()) ? std::min(*snap, cfg.t_final) : cfg.t_final;
    const double span = target - t;
    const auto steps = std::max<long long>(1, static_cast<long long>(std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (long long s = 1; s <= steps; ++s) {
      integ.advance(h);
      integ.set_time(s == steps ? target : t + s * h);
      record();
    }
    t = target;
    take_snapshot_if_due();
  }
  return traj;
}

template <std::size_t N>
GridField<N> single_step(EtdIntegrator<N>& integ, const GridField<N>& f, double dt, const Kinetics& k,
                         double limit, double decay_rate) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  integ.reset(f);
  integ.advance(dt);
  integ.set_time(f.time() + dt);
  const auto d = diagnose(integ, std::exp(-decay_rate * integ.state().time()), k);
  check_state(integ, 1.0, k, limit, d.linfnorm);
  return integ.state();
}

}  // namespace

TensorField step_tensor(const TensorField& f, const ModelParams& p, double dt, Scheme scheme, bool reaction) {
  const Kinetics k = Kinetics::select(p, reaction);
  EtdIntegrator<5> integ(f.grid(), k.a, tensor_nonlinearity(k), scheme);
  return single_step(integ, f, dt, k, k.active() ? blowup_threshold(p) : 0.0, 0.0);
}

TensorTrajectory evolve_tensor(const TensorField& q0, const ModelParams& p, const SimConfig& cfg) {
  const Kinetics k = Kinetics::select(p, cfg.reaction);
  EtdIntegrator<5> integ(cfg.grid, k.a, tensor_nonlinearity(k), cfg.scheme);
  return run(integ, q0, p, cfg, k, 0.0, false);
}

ScalarField step_scalar(const ScalarField& l, const ModelParams& p, double dt, Scheme scheme, bool reaction) {
  const Kinetics k = Kinetics::select(p, reaction);
  EtdIntegrator<1> integ(l.grid(), k.a, scalar_nonlinearity(k), scheme);
  return single_step(integ, l, dt, k, k.active() ? blowup_threshold(p) : 0.0, 0.0);
}

ScalarTrajectory evolve_scalar(const ScalarField& l0, const ModelParams& p, const SimConfig& cfg) {
  const Kinetics k = Kinetics::select(p, cfg.reaction);
  EtdIntegrator<1> integ(cfg.grid, k.a, scalar_nonlinearity(k), cfg.scheme);
  return run(integ, l0, p, cfg, k, 0.0, false);
}

TensorField step_transformed(const TensorField& r, const ModelParams& p, double dt, Scheme scheme,
                             bool reaction) {
  const Kinetics k = Kinetics::select(p, reaction);
  EtdIntegrator<5> integ(r.grid(), 0.0, transformed_nonlinearity(k), scheme);
  return single_step(integ, r, dt, k, k.active() ? blowup_threshold(p) : 0.0, k.a);
}

TensorTrajectory evolve_transformed(const TensorField& r0, const ModelParams& p, const SimConfig& cfg) {
  const Kinetics k = Kinetics::select(p, cfg.reaction);
  EtdIntegrator<5> integ(cfg.grid, 0.0, transformed_nonlinearity(k), cfg.scheme);
  return run(integ, r0, p, cfg, k, k.a, true);
}

TensorField to_transformed(const TensorField& q, const ModelParams& p) {
  TensorField r = q;
  r *= std::exp(p.a() * q.time());
  return r;
}

TensorField from_transformed(const TensorField& r, const ModelParams& p) {
  TensorField q = r;
  q *= std::exp(-p.a() * r.time());
  return q;
}

namespace {

L2GrowthReport l2_growth_impl(const std::vector<DiagnosticSample>& d, const ModelParams& p, bool reaction) {
  L2GrowthReport rep;
  rep.growth_constant = reaction ? 2.0 * (p.b() * p.b() / (2.0 * p.c()) - p.a()) : 0.0;
  rep.worst_excess = -INFINITY;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double dt = d[i + 1].t - d[i].t;
    if (!(dt > 0.0)) continue;
    const double n0 = d[i].l2norm * d[i].l2norm;
    const double n1 = d[i + 1].l2norm * d[i + 1].l2norm;
    const double lhs = (n1 - n0) / dt;
    const double rhs = rep.growth_constant * n0 + 1e-6 * std::max(1.0, n0);
    const double excess = lhs - rhs;
    if (excess > rep.worst_excess) rep.worst_excess = excess;
    if (excess > 0.0 && !rep.offending_step) {
      rep.passed = false;
      rep.offending_step = i;
    }
  }
  if (rep.worst_excess == -INFINITY) rep.worst_excess = 0.0;
  return rep;
}

}  // namespace

L2GrowthReport l2_growth_check(const TensorTrajectory& traj, const ModelParams& p) {
  return l2_growth_impl(traj.diagnostics, p, traj.config.reaction);
}

L2GrowthReport l2_growth_check(const ScalarTrajectory& traj, const ModelParams& p) {
  return l2_growth_impl(traj.diagnostics, p, traj.config.reaction);
}

}  // namespace nematic

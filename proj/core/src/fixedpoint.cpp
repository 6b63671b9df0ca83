#include "nematic/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nematic/fit.hpp"
#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("time grid needs at least two nodes");
  if (nodes_.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  for (std::size_t k = 1; k < nodes_.size(); ++k)
    if (!(nodes_[k] > nodes_[k - 1])) throw std::invalid_argument("time grid must be strictly increasing");
}

TimeGrid TimeGrid::geometric(double t_first, double rho, double horizon, std::span<const double> extra) {
  if (!(t_first > 0.0) || !(rho > 1.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("geometric grid needs t_first > 0, rho > 1, horizon > 0");
  }
  std::vector<double> t{0.0};
  for (double s = t_first;; s *= rho) {
    t.push_back(s);
    if (s >= horizon) break;
  }
  for (double e : extra) {
    if (e < 0.0) throw std::invalid_argument("negative time requested");
    t.push_back(e);
  }
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  for (double s : t)
    if (out.empty() || s - out.back() > 1e-9 * (1.0 + s)) out.push_back(s);
  return TimeGrid(std::move(out));
}

double TimeGrid::default_horizon(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("default horizon needs a > 0");
  auto bound = [a](double T) { return std::exp(-a * T) / std::pow(T + 1.0, 3.0); };
  double lo = 0.0, hi = 1.0;
  while (bound(hi) > 1e-12) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bound(mid) > 1e-12 ? lo : hi) = mid;
  }
  return hi;
}

std::optional<std::size_t> TimeGrid::find(double t) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (std::abs(nodes_[k] - t) <= 1e-9 * (1.0 + std::abs(t))) return k;
  return std::nullopt;
}

double x0_norm(const std::vector<TensorField>& V, const TimeGrid& grid, double delta) {
  if (V.size() != grid.size()) throw std::invalid_argument("V does not match the time grid");
  double worst = 0.0;
  for (std::size_t k = 0; k < V.size(); ++k) {
    const GridSpec& g = V[k].grid();
    for (std::size_t i = 0; i < V[k].size(); ++i) {
      const double m = magnitude_at(V[k], i);
      if (m == 0.0) continue;
      worst = std::max(worst, x0_weight(g.position(i), grid[k], delta) * m);
    }
  }
  return worst;
}

double pair_norm(const TracelessSym3& A, const std::vector<TensorField>& V, const TimeGrid& grid, double delta) {
  return frobenius_norm(A) + x0_norm(V, grid, delta);
}

namespace {

/// W(z1, z2) = integral_0^1 e^{-z1 (1-u) - z2 u} u du for z1, z2 >= 0.
double product_weight(double z1, double z2, double e1, double e2) {
  const double d = z1 - z2;
  if (std::abs(d) < 0.5) {
    double term = 1.0, sum = 0.0;
    for (int n = 0; n < 30; ++n) {
      sum += term / (n + 2);
      term *= d / (n + 1);
    }
    return e1 * sum;
  }
  return (e2 * (d - 1.0) + e1) / (d * d);
}

struct IntervalWeights {
  double w0a, w1a, w0b, w1b;  // (start, end) weights for rates a and 2a
};

IntervalWeights interval_weights(double z1, double e1, double za, double ea, double zb, double eb) {
  return {product_weight(za, z1, ea, e1), product_weight(z1, za, e1, ea), product_weight(zb, z1, eb, e1),
          product_weight(z1, zb, e1, eb)};
}

TracelessSym3 spatial_integral(const TensorField& f) { return integral(f); }

/// g1 = R^2 - tr(R^2)/3 I and g2 = tr(R^2) R.
void quadratic_parts(const TensorField& r, TensorField& g1, TensorField& g2) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    const TracelessSym3 q = tensor_at(r, i);
    set_tensor(g1, i, traceless_square(q));
    set_tensor(g2, i, trace_sq(q) * q);
  }
}

TracelessSym3 tail_beyond(const TracelessSym3& f_prev, const TracelessSym3& f_last, double dt, double a) {
  const double n0 = frobenius_norm(f_prev), n1 = frobenius_norm(f_last);
  double rate = a;
  if (n0 > 0.0 && n1 > 0.0) rate = std::max(a, std::log(n0 / n1) / dt);
  return (1.0 / rate) * f_last;
}

}  // namespace

FImage apply_F(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0, const ModelParams& p,
               const TimeGrid& grid, bool reaction) {
  if (V.size() != grid.size()) throw std::invalid_argument("V does not match the time grid");
  for (const auto& v : V)
    if (!(v.grid() == q0.grid())) throw std::invalid_argument("V and q0 live on different grids");
  const Kinetics k = Kinetics::select(p, reaction);
  const double T = grid.horizon();
  if (k.active() && !(std::exp(-k.a * T) / std::pow(T + 1.0, 2.0) < 1e-10)) {
    throw std::invalid_argument("time horizon too small for the tail estimate");
  }

  const GridSpec& g = q0.grid();
  const auto sg = SpectralGrid::shared(g);
  const auto k2 = sg->k2();
  const std::size_t ns = sg->spectral_size();

  std::array<ComplexBuffer, 5> q0hat, D, g1p, g2p, g1c, g2c;
  for (std::size_t c = 0; c < 5; ++c) {
    q0hat[c] = sg->make_spectrum();
    sg->forward(q0.plane(c), q0hat[c]);
    D[c] = sg->make_spectrum();
    g1p[c] = sg->make_spectrum();
    g2p[c] = sg->make_spectrum();
    g1c[c] = sg->make_spectrum();
    g2c[c] = sg->make_spectrum();
  }
  const TracelessSym3 mass = spatial_integral(q0);

  FImage img;
  img.F2.reserve(grid.size());
  std::vector<ScalarField> phi;
  phi.reserve(grid.size());
  TensorField U(g), G1(g), G2(g);
  auto spec = sg->make_spectrum();
  std::array<TracelessSym3, 2> h_last{};  // spatial integrals of h at the last two nodes

  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double t = grid[n];
    phi.push_back(phi1_field(g, t));
    phi.back().set_time(t);

    if (k.active()) {
      for (std::size_t i = 0; i < U.size(); ++i) set_tensor(U, i, phi.back()(0, i) * A + tensor_at(V[n], i));
      quadratic_parts(U, G1, G2);
      for (std::size_t c = 0; c < 5; ++c) {
        sg->forward(G1.plane(c), g1c[c]);
        sg->forward(G2.plane(c), g2c[c]);
      }
      h_last[0] = h_last[1];
      h_last[1] = (k.b * std::exp(-k.a * t)) * spatial_integral(G1) - (k.c * std::exp(-2.0 * k.a * t)) * spatial_integral(G2);

      if (n > 0) {
        const double t0 = grid[n - 1];
        const double dt = t - t0;
        const double za = k.a * dt, zb = 2.0 * k.a * dt;
        const double ea = std::exp(-za), eb = std::exp(-zb);
        const double ca = k.b * std::exp(-k.a * t0) * dt;
        const double cb = k.c * std::exp(-2.0 * k.a * t0) * dt;
        for (std::size_t i = 0; i < ns; ++i) {
          const double z1 = k2[i] * dt;
          const double e1 = std::exp(-z1);
          const IntervalWeights w = interval_weights(z1, e1, za, ea, zb, eb);
          for (std::size_t c = 0; c < 5; ++c) {
            D[c][i] = e1 * D[c][i] + ca * (w.w0a * g1p[c][i] + w.w1a * g1c[c][i]) -
                      cb * (w.w0b * g2p[c][i] + w.w1b * g2c[c][i]);
          }
        }
      }
      std::swap(g1p, g1c);
      std::swap(g2p, g2c);
    }

    // e^{t Delta} q0 + Duhamel term; the Phi_1 correction is added once the
    // full time integral is known.
    TensorField out(g, t);
    for (std::size_t c = 0; c < 5; ++c) {
      for (std::size_t i = 0; i < ns; ++i) spec[i] = std::exp(-k2[i] * t) * q0hat[c][i] + D[c][i];
      sg->inverse(spec, out.plane(c));
    }
    img.F2.push_back(std::move(out));
  }

  TracelessSym3 H;
  if (k.active()) {
    H = TracelessSym3::from_components({D[0][0].real(), D[1][0].real(), D[2][0].real(), D[3][0].real(),
                                         D[4][0].real()}) *
        g.cell_volume();
    const TracelessSym3 tail = tail_beyond(h_last[0], h_last[1], grid[grid.size() - 1] - grid[grid.size() - 2], k.a);
    img.tail = frobenius_norm(tail);
    H += tail;
  }
  img.h_integral = H;
  img.F1 = mass + H;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    TensorField& f = img.F2[n];
    for (std::size_t i = 0; i < f.size(); ++i) set_tensor(f, i, tensor_at(f, i) - phi[n](0, i) * img.F1);
  }
  return img;
}

TracelessSym3 apply_F1(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0,
                       const ModelParams& p, const TimeGrid& grid, bool reaction) {
  return apply_F(A, V, q0, p, grid, reaction).F1;
}

TensorField apply_F2(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0,
                     const ModelParams& p, const TimeGrid& grid, double t_eval, bool reaction) {
  const auto k = grid.find(t_eval);
  if (!k) throw std::invalid_argument("t_eval is not a node of the time grid");
  return std::move(apply_F(A, V, q0, p, grid, reaction).F2[*k]);
}

DecompositionState picard_solve(const TensorField& q0, const ModelParams& p, const TimeGrid& grid,
                                const PicardOptions& opt) {
  if (opt.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  DecompositionState s;
  s.time_grid = grid;
  s.eps0 = opt.eps0;
  s.q0_a_norm = a_norm(q0, p.delta());
  s.small_data = s.q0_a_norm <= p.eta();
  s.V.reserve(grid.size());
  for (double t : grid.nodes()) s.V.emplace_back(q0.grid(), t);

  for (int it = 1; it <= opt.max_iter; ++it) {
    FImage img = apply_F(s.A, s.V, q0, p, grid, opt.reaction);
    std::vector<TensorField> diff = img.F2;
    for (std::size_t n = 0; n < diff.size(); ++n) diff[n] -= s.V[n];
    const double inc = pair_norm(img.F1 - s.A, diff, grid, p.delta());
    s.A = img.F1;
    s.V = std::move(img.F2);
    s.iterations = it;
    if (!s.increments.empty() && s.increments.back() > 0.0) s.ratios.push_back(inc / s.increments.back());
    s.increments.push_back(inc);
    const double size = pair_norm(s.A, s.V, grid, p.delta());
    s.max_iterate_norm = std::max(s.max_iterate_norm, size);
    if (size > opt.eps0) s.stayed_in_ball = false;
    if (inc <= opt.tol * size) {
      s.converged = true;
      break;
    }
  }
  s.x0_norm_estimate = x0_norm(s.V, grid, p.delta());
  return s;
}

TensorField reconstruct(const DecompositionState& s, const ModelParams& p, std::size_t k) {
  if (k >= s.V.size()) throw std::out_of_range("node index beyond the time grid");
  const double t = s.time_grid[k];
  const ScalarField phi = phi1_field(s.V[k].grid(), t);
  TensorField out(s.V[k].grid(), t);
  const double decay = std::exp(-p.a() * t);
  for (std::size_t i = 0; i < out.size(); ++i)
    set_tensor(out, i, decay * (phi(0, i) * s.A + tensor_at(s.V[k], i)));
  return out;
}

ExtractResult extract_A(const TensorTrajectory& traj, const ModelParams& p, double tail_tol) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 2) throw std::invalid_argument("extract_A needs at least two snapshots");
  if (std::abs(snaps.front().time()) > 1e-12) throw std::invalid_argument("extract_A needs the snapshot at t = 0");
  const Kinetics k = Kinetics::select(p, traj.config.reaction);
  ExtractResult res;
  const TracelessSym3 mass = integral(snaps.front());
  if (!k.active()) {
    res.A = mass;
    return res;
  }

  const std::size_t m = snaps.size();
  std::vector<double> t(m);
  std::vector<TracelessSym3> G1(m), G2(m);
  TensorField r(snaps.front().grid()), g1(r.grid()), g2(r.grid());
  for (std::size_t j = 0; j < m; ++j) {
    t[j] = snaps[j].time();
    r = snaps[j];
    if (!traj.transformed) r *= std::exp(k.a * t[j]);
    quadratic_parts(r, g1, g2);
    G1[j] = integral(g1);
    G2[j] = integral(g2);
  }

  auto integrate = [&](const std::vector<std::size_t>& idx) {
    TracelessSym3 sum;
    for (std::size_t q = 1; q < idx.size(); ++q) {
      const std::size_t i0 = idx[q - 1], i1 = idx[q];
      const double dt = t[i1] - t[i0];
      const double za = k.a * dt, zb = 2.0 * k.a * dt;
      const IntervalWeights w = interval_weights(0.0, 1.0, za, std::exp(-za), zb, std::exp(-zb));
      sum += (k.b * std::exp(-k.a * t[i0]) * dt) * (w.w0a * G1[i0] + w.w1a * G1[i1]);
      sum -= (k.c * std::exp(-2.0 * k.a * t[i0]) * dt) * (w.w0b * G2[i0] + w.w1b * G2[i1]);
    }
    return sum;
  };

  std::vector<std::size_t> all(m), coarse;
  for (std::size_t j = 0; j < m; ++j) all[j] = j;
  for (std::size_t j = 0; j < m; j += 2) coarse.push_back(j);
  if (coarse.back() != m - 1) coarse.push_back(m - 1);

  auto h_at = [&](std::size_t j) {
    return (k.b * std::exp(-k.a * t[j])) * G1[j] - (k.c * std::exp(-2.0 * k.a * t[j])) * G2[j];
  };
  const TracelessSym3 full = integrate(all);
  const TracelessSym3 tail = tail_beyond(h_at(m - 2), h_at(m - 1), t[m - 1] - t[m - 2], k.a);
  res.tail = frobenius_norm(tail);
  res.A = mass + full + tail;
  res.error_bar = frobenius_norm(full - integrate(coarse)) + res.tail;
  const double scale = frobenius_norm(res.A);
  res.flagged = res.tail > tail_tol * (scale > 0.0 ? scale : 1.0);
  return res;
}

VDecayReport v_decay_check(const DecompositionState& s, double t_begin, double t_end, double threshold) {
  VDecayReport rep;
  rep.threshold = threshold;
  std::vector<double> lt, lv;
  double tmin = INFINITY, tmax = -INFINITY;
  bool all_zero = true;
  std::size_t in_window = 0;
  for (std::size_t k = 0; k < s.V.size(); ++k) {
    const double t = s.time_grid[k];
    if (t < t_begin || t > t_end) continue;
    ++in_window;
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
    const double v = lp_norm(s.V[k], 2.0);
    if (v > 0.0) {
      all_zero = false;
      lt.push_back(std::log(t + 1.0));
      lv.push_back(std::log(v));
    }
  }
  if (in_window < 5) throw std::invalid_argument("v_decay_check needs at least five snapshots");
  if (tmax + 1.0 < 10.0 * (tmin + 1.0) * (1.0 - 1e-12)) {
    throw std::invalid_argument("v_decay_check window must span a decade in t + 1");
  }
  rep.samples = lt.size();
  if (all_zero) return rep;
  if (lt.size() < 5) throw std::invalid_argument("v_decay_check needs five nonzero snapshots");
  const LineFit f = least_squares_line(lt, lv);
  rep.slope = f.slope;
  rep.r_squared = f.r_squared;
  rep.passed = f.slope <= threshold;
  return rep;
}

EtaCalibration calibrate_eta(const ModelParams& p, const GridSpec& grid, const TimeGrid& times,
                             std::span<const double> alphas, double target_ratio, const PicardOptions& opt) {
  EtaCalibration cal;
  for (double alpha : alphas) {
    const TensorField q0 = uniaxial_lift(power_tail_amplitude(grid, alpha, p.delta()));
    const DecompositionState s = picard_solve(q0, p, times, opt);
    double worst = 0.0;
    for (double r : s.ratios) worst = std::max(worst, r);
    cal.probes.push_back({alpha, s.q0_a_norm, worst, s.converged});
  }
  std::vector<EtaProbe> sorted = cal.probes;
  std::sort(sorted.begin(), sorted.end(), [](const EtaProbe& x, const EtaProbe& y) { return x.a_norm < y.a_norm; });
  for (const auto& pr : sorted) {
    if (!pr.converged || pr.max_ratio > target_ratio) break;
    cal.eta = pr.a_norm;
  }
  return cal;
}

}  // namespace nematic

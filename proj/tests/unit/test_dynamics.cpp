#include <doctest.h>

#include <cmath>
#include <random>

#include "nematic/dynamics.hpp"
#include "nematic/errors.hpp"
#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"
#include "oracles.hpp"

using namespace nematic;

namespace {

const ModelParams kP(1, 10, 1);

SimConfig run(const GridSpec& g, double dt, double t_final, std::vector<double> snaps, bool reaction = true,
              Scheme s = Scheme::ETD2) {
  return {g, dt, t_final, std::move(snaps), s, reaction};
}

template <std::size_t N>
double max_diff(const GridField<N>& a, const GridField<N>& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(c, i) - b(c, i)));
  return m;
}

TensorField smooth_random(const GridSpec& g, std::mt19937& rng, double amp) {
  std::normal_distribution<double> d;
  TensorField f(g);
  for (std::size_t c = 0; c < 5; ++c)
    for (auto& v : f.plane(c)) v = d(rng);
  f = apply_heat(f, 0.5);
  f.set_time(0.0);
  f *= amp / lp_norm(f, INFINITY);
  return f;
}

/// Radial ramp from lambda* inside to 0 outside, crossing |lambda*|/2 at radius R.
ScalarField ramp(const GridSpec& g, double radius, double half_width, double t) {
  const double ls = lambda_star(kP);
  ScalarField l(g, t);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const double s = 0.5 - (norm(g.position(i)) - radius) / (2 * half_width);
    l(0, i) = ls * std::clamp(s, 0.0, 1.0);
  }
  return l;
}

}  // namespace

TEST_CASE("SimConfig validation") {
  const GridSpec g(8, 4.0);
  CHECK_NOTHROW(run(g, 0.1, 1.0, {0.5, 1.0}).validate());
  CHECK_THROWS_AS(run(g, 0.0, 1.0, {}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run(g, 2.0, 1.0, {}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run(g, 0.1, 1.0, {0.5, 0.2}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run(g, 0.1, 1.0, {0.5, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(run(g, 0.1, 1.0, {1.5}).validate(), std::invalid_argument);
}

TEST_CASE("step_tensor fixed points and the heat limit") {
  const GridSpec g(16, 8.0);
  CHECK(lp_norm(step_tensor(TensorField(g), kP, 0.1), INFINITY) == 0.0);
  std::mt19937 rng(oracle::seed());
  const auto f = smooth_random(g, rng, 0.5);
  CHECK(max_diff(step_tensor(f, kP, 0.1, Scheme::ETD2, false), apply_heat(f, 0.1)) < 1e-12);
  CHECK(max_diff(step_tensor(f, kP, 0.1, Scheme::ETD1, false), apply_heat(f, 0.1)) < 1e-12);
  CHECK(step_tensor(f, kP, 0.1).time() == doctest::Approx(0.1));
}

TEST_CASE("constant uniaxial data follows the amplitude ODE at second order") {
  const GridSpec g(8, 4.0);
  const double l0 = -0.5, T = 1.0;
  const double exact = oracle::rk4([](double l) { return -l - 10 * l * l - 6 * l * l * l; }, l0, T, 20000);
  TensorField q0(g);
  for (std::size_t i = 0; i < q0.size(); ++i) set_tensor(q0, i, make_uniaxial(l0));
  double errs[2];
  int k = 0;
  for (double dt : {0.05, 0.025}) {
    const auto tr = evolve_tensor(q0, kP, run(g, dt, T, {T}));
    errs[k++] = std::abs(tr.snapshots.back()(0, 0) - exact);
  }
  CHECK(errs[0] < 1e-2);
  CHECK(errs[0] / errs[1] >= 3.5);
}

TEST_CASE("evolve_tensor basics") {
  const GridSpec g(16, 8.0);
  const auto zero = evolve_tensor(TensorField(g), kP, run(g, 0.1, 1.0, {0.5, 1.0}));
  REQUIRE(zero.snapshots.size() == 2);
  for (const auto& s : zero.snapshots) CHECK(lp_norm(s, INFINITY) == 0.0);
  CHECK(zero.snapshots[0].time() == doctest::Approx(0.5));
  CHECK(zero.diagnostics.front().t == 0.0);
  CHECK(zero.diagnostics.back().t == doctest::Approx(1.0));

  // Snapshot times that are not multiples of dt are still hit exactly.
  const auto odd = evolve_tensor(TensorField(g), kP, run(g, 0.1, 1.0, {0.33, 0.71}));
  CHECK(odd.snapshots[0].time() == 0.33);
  CHECK(odd.snapshots[1].time() == 0.71);
}

TEST_CASE("energy decreases and the L2 growth bound holds") {
  const GridSpec g(16, 10.0);
  std::mt19937 rng(oracle::seed() + 3);
  const auto q0 = smooth_random(g, rng, 1.5);
  const auto tr = evolve_tensor(q0, kP, run(g, 0.01, 1.0, {1.0}));
  for (std::size_t i = 1; i < tr.diagnostics.size(); ++i) {
    const double e0 = tr.diagnostics[i - 1].energy, e1 = tr.diagnostics[i].energy;
    CHECK(e1 <= e0 + 1e-8 * (1 + std::abs(e0)));
  }
  const auto rep = l2_growth_check(tr, kP);
  CHECK(rep.growth_constant == doctest::Approx(98.0));
  CHECK(rep.passed);

  const auto heat = evolve_tensor(q0, kP, run(g, 0.05, 1.0, {1.0}, false));
  const auto hrep = l2_growth_check(heat, kP);
  CHECK(hrep.growth_constant == 0.0);
  CHECK(hrep.passed);
  for (std::size_t i = 1; i < heat.diagnostics.size(); ++i) CHECK(heat.diagnostics[i].l2norm <= heat.diagnostics[i - 1].l2norm);

  const auto z = evolve_tensor(TensorField(g), kP, run(g, 0.1, 0.5, {0.5}));
  CHECK(l2_growth_check(z, kP).passed);
}

TEST_CASE("scalar solver") {
  const GridSpec g(16, 8.0);
  const auto zero = evolve_scalar(ScalarField(g), kP, run(g, 0.1, 1.0, {1.0}));
  CHECK(lp_norm(zero.snapshots[0], INFINITY) == 0.0);

  ScalarField star(g);
  const double ls = lambda_star(kP);
  for (auto& v : star.plane(0)) v = ls;
  const auto st = evolve_scalar(star, kP, run(g, 0.1, 1.0, {1.0}));
  CHECK(lp_norm(st.snapshots[0] - star, INFINITY) < 1e-10);
}

TEST_CASE("tensor and scalar solvers agree on uniaxial data") {
  const GridSpec g(16, 12.0);
  const auto l0 = plateau_amplitude(g, 2.5, lambda_star(kP));
  const auto cfg = run(g, 0.02, 2.0, {0.5, 1.0, 2.0});
  const auto ts = evolve_tensor(uniaxial_lift(l0), kP, cfg);
  const auto ss = evolve_scalar(l0, kP, cfg);
  for (std::size_t k = 0; k < ts.snapshots.size(); ++k) {
    const auto lifted = uniaxial_lift(ss.snapshots[k]);
    CHECK(lp_norm(ts.snapshots[k] - lifted, 2) <= 1e-8 * lp_norm(lifted, 2));
  }
}

TEST_CASE("transformed solver commutes with the transformation") {
  const GridSpec g(16, 10.0);
  std::mt19937 rng(oracle::seed() + 4);
  const auto q0 = smooth_random(g, rng, 0.8);
  CHECK(max_diff(to_transformed(q0, kP), q0) == 0.0);
  auto shifted = q0;
  shifted.set_time(1.7);
  CHECK(max_diff(from_transformed(to_transformed(shifted, kP), kP), shifted) < 1e-15);

  // The two steppers discretise different equations, so they agree up to
  // their O(dt^2) errors: tight for small data and a fine step.
  const auto small = (0.02 / lp_norm(q0, INFINITY)) * q0;
  const auto q = evolve_tensor(small, kP, run(g, 0.001, 1.0, {0.5, 1.0}));
  const auto r = evolve_transformed(to_transformed(small, kP), kP, run(g, 0.001, 1.0, {0.5, 1.0}));
  CHECK(r.transformed);
  for (std::size_t k = 0; k < q.snapshots.size(); ++k) {
    const auto back = from_transformed(r.snapshots[k], kP);
    CHECK(lp_norm(back - q.snapshots[k], 2) <= 1e-8 * lp_norm(q.snapshots[k], 2));
  }

  double gap[2];
  int i = 0;
  for (double dt : {0.01, 0.005}) {
    const auto qa = evolve_tensor(q0, kP, run(g, dt, 1.0, {1.0}));
    const auto ra = evolve_transformed(to_transformed(q0, kP), kP, run(g, dt, 1.0, {1.0}));
    gap[i++] = lp_norm(from_transformed(ra.snapshots[0], kP) - qa.snapshots[0], 2);
  }
  CHECK(gap[0] / gap[1] >= 3.5);
}

TEST_CASE("transformed mass of nonpositive small data does not increase") {
  const GridSpec g(16, 24.0);
  const auto l0 = power_tail_amplitude(g, 0.04, 1.0);
  const double m0 = integral(l0);
  REQUIRE(m0 < 0.0);
  const auto tr = evolve_transformed(uniaxial_lift(l0), kP, run(g, 0.05, 5.0, {0.5, 1, 2, 3, 4, 5}));
  double prev = m0;
  for (const auto& s : tr.snapshots) {
    const double m = integral(s).q11;
    CHECK(m <= prev + 1e-12 * std::abs(m0));
    prev = m;
  }
}

TEST_CASE("runaway amplitude aborts") {
  const GridSpec g(8, 4.0);
  TensorField q0(g);
  for (std::size_t i = 0; i < q0.size(); ++i) set_tensor(q0, i, make_uniaxial(-50.0));
  CHECK_THROWS_AS(evolve_tensor(q0, kP, run(g, 1.0, 3.0, {3.0}, true, Scheme::ETD1)), NumericAbort);
}

TEST_CASE("front_radius") {
  const GridSpec g(64, 32.0);
  const double ls = lambda_star(kP);
  const auto l = plateau_amplitude(g, 6.0, ls);
  const auto r = front_radius(l, std::abs(ls) / 2);
  REQUIRE(r.has_value());
  CHECK(std::abs(*r - 6.0) <= g.spacing());
  CHECK_FALSE(front_radius(ScalarField(g), std::abs(ls) / 2).has_value());
  CHECK_THROWS_AS(front_radius(l, 0.0), std::invalid_argument);
}

TEST_CASE("front_speed on synthetic fronts") {
  const GridSpec g(64, 32.0);
  const double ls = lambda_star(kP);
  SimConfig cfg = run(g, 0.1, 8.0, {});
  ScalarTrajectory moving{cfg, kP, {}, {}, false};
  ScalarTrajectory still{cfg, kP, {}, {}, false};
  for (int k = 0; k <= 8; ++k) {
    moving.snapshots.push_back(ramp(g, 2.0 + 0.5 * k, 2 * g.spacing(), k));
    still.snapshots.push_back(ramp(g, 5.0, 2 * g.spacing(), k));
  }
  const auto fit = front_speed(moving, std::abs(ls) / 2, 0.0, 8.0);
  CHECK(fit.c_bar == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.fit_residual < 1e-10);
  CHECK(std::abs(front_speed(still, std::abs(ls) / 2, 0.0, 8.0).c_bar) < 1e-12);
  CHECK_THROWS_AS(front_speed(moving, std::abs(ls) / 2, 0.0, 3.0), std::invalid_argument);
  ScalarTrajectory empty{cfg, kP, {}, {}, false};
  for (int k = 0; k <= 5; ++k) empty.snapshots.push_back(ScalarField(g, k));
  CHECK_THROWS_AS(front_speed(empty, std::abs(ls) / 2, 0.0, 5.0), std::runtime_error);
}

TEST_CASE("Trajectory::append") {
  const GridSpec g(8, 4.0);
  const auto first = evolve_tensor(TensorField(g), kP, run(g, 0.1, 1.0, {0.5, 1.0}));
  auto later_start = first.snapshots.back();
  auto later = evolve_tensor(later_start, kP, run(g, 0.1, 2.0, {2.0}));
  auto joined = first;
  joined.append(std::move(later));
  CHECK(joined.snapshots.size() == 3);
  CHECK(joined.snapshots.back().time() == doctest::Approx(2.0));
  for (std::size_t i = 1; i < joined.diagnostics.size(); ++i) CHECK(joined.diagnostics[i].t > joined.diagnostics[i - 1].t);
}

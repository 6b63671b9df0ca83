#include <doctest.h>

#include <cmath>
#include <random>

#include "nematic/qtensor.hpp"
#include "oracles.hpp"

using namespace nematic;

namespace {

TracelessSym3 random_q(std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("make_uniaxial") {
  CHECK(make_uniaxial(0.0) == TracelessSym3{});
  const auto m = oracle::full(make_uniaxial(1.0));
  CHECK(oracle::max_abs_diff(m, {{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}}) == 0.0);
  CHECK(frobenius_norm(make_uniaxial(1.0)) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  const auto h = make_uniaxial(-0.5);
  CHECK(h.q11 == -0.5);
  CHECK(h.q33() == 1.0);
  CHECK(oracle::trace(oracle::full(h)) == 0.0);
}

TEST_CASE("frobenius_inner against full matrix products") {
  CHECK(frobenius_inner({}, make_uniaxial(3.0)) == 0.0);
  CHECK(frobenius_inner(make_uniaxial(1.0), make_uniaxial(1.0)) == doctest::Approx(6.0));
  CHECK(frobenius_inner({1.0, -1.0, 0, 0, 0}, make_uniaxial(1.0)) == doctest::Approx(0.0));

  std::mt19937 rng(oracle::seed());
  for (int i = 0; i < 200; ++i) {
    const auto p = random_q(rng), q = random_q(rng);
    const double want = oracle::trace(oracle::mul(oracle::full(p), oracle::full(q)));
    CHECK(frobenius_inner(p, q) == doctest::Approx(want).epsilon(1e-13));
    CHECK(trace_cube(q) == doctest::Approx(oracle::trace(oracle::mul(oracle::full(q), oracle::mul(oracle::full(q), oracle::full(q))))).epsilon(1e-12));
  }
}

TEST_CASE("project symmetrises and removes the trace") {
  const Matrix3 m{{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}};
  const auto q = TracelessSym3::project(m);
  CHECK(q.q11 == doctest::Approx(1 - 16.0 / 3));
  CHECK(q.q12 == doctest::Approx(3.0));
  CHECK(q.q13 == doctest::Approx(5.0));
  CHECK(q.q23 == doctest::Approx(7.0));
  CHECK(q.q33() == doctest::Approx(10 - 16.0 / 3));
}

TEST_CASE("ModelParams enforces the bistable region") {
  CHECK_NOTHROW(ModelParams(1, 10, 1));
  CHECK_THROWS_AS(ModelParams(1, 5, 1), std::invalid_argument);  // 25 <= 27
  CHECK_THROWS_AS(ModelParams(0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1, 10, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1, 10, 1, 1.0, -1.0), std::invalid_argument);
  try {
    ModelParams(1, 5, 1);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("b^2 > 27ac") != std::string::npos);
  }
}

TEST_CASE("reaction_rhs") {
  const ModelParams p(1, 10, 1);
  CHECK(reaction_rhs({}, p) == TracelessSym3{});

  for (double l : {-1.3, -0.2, 0.4, 2.0}) {
    const auto r = reaction_rhs(make_uniaxial(l), p);
    CHECK(r.q11 == doctest::Approx(-l - 10 * l * l - 6 * l * l * l).epsilon(1e-13));
    CHECK(r.q12 == 0.0);
  }

  const double ls = lambda_star(p);
  CHECK(frobenius_norm(reaction_rhs(make_uniaxial(ls), p)) < 1e-10);

  std::mt19937 rng(oracle::seed() + 1);
  for (int i = 0; i < 200; ++i) {
    const auto q = random_q(rng, 2.0);
    const auto want = oracle::reaction(oracle::full(q), 1.3, 10.0, 0.7);
    const auto got = oracle::full(reaction_rhs(q, Kinetics{1.3, 10.0, 0.7}));
    CHECK(oracle::max_abs_diff(want, got) < 1e-12 * (1 + std::abs(want[0][0])));
  }
}

TEST_CASE("nonlinearity_h") {
  const ModelParams p(1, 10, 1);
  CHECK(nonlinearity_h({}, 3.0, p) == TracelessSym3{});
  const double l = -0.7;
  const auto h = nonlinearity_h(make_uniaxial(l), 0.0, p);
  CHECK(h.q11 == doctest::Approx(-10 * l * l - 6 * l * l * l));
  CHECK(h.q33() == doctest::Approx(20 * l * l + 12 * l * l * l));

  // h(R, t) = e^{at} (reaction + aQ) at Q = e^{-at} R.
  std::mt19937 rng(oracle::seed() + 2);
  double prev = INFINITY;
  const auto r = random_q(rng);
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const double s = std::exp(-t);
    const auto want = oracle::lin(1.0 / s, oracle::reaction(oracle::lin(s, oracle::full(r)), 0.0, 10.0, 1.0));
    CHECK(oracle::max_abs_diff(want, oracle::full(nonlinearity_h(r, t, p))) < 1e-12);
    const double mag = frobenius_norm(nonlinearity_h(r, t, p));
    CHECK(mag < prev);
    prev = mag;
  }
}

TEST_CASE("bulk energy and the reduced potential") {
  const ModelParams p(1, 10, 1);
  CHECK(bulk_energy_density({}, p) == 0.0);
  CHECK(bulk_energy_density(make_uniaxial(-1.0), p) == doctest::Approx(-8.0));
  for (double l : {-2.0, -0.5, 0.3, 1.1}) {
    CHECK(bulk_energy_density(make_uniaxial(l), p) ==
          doctest::Approx(3 * l * l + 20 * l * l * l + 9 * l * l * l * l));
    CHECK(bulk_energy_density(make_uniaxial(l), p) == doctest::Approx(6 * uniaxial_potential(l, p)));
  }
}

TEST_CASE("lambda_star against a grid search") {
  const ModelParams p(1, 10, 1);
  const double ls = lambda_star(p);
  CHECK(ls == doctest::Approx((-10 - std::sqrt(76.0)) / 12).epsilon(1e-14));
  CHECK(ls == doctest::Approx(-1.5598).epsilon(1e-4));
  CHECK(uniaxial_potential(ls, p) == doctest::Approx(-2.554).epsilon(1e-3));
  CHECK(std::abs(1 + 10 * ls + 6 * ls * ls) < 1e-10);

  // Coarse scan then bisection on the derivative.
  double best = 0.0, vbest = 0.0;
  for (int i = 0; i <= 40000; ++i) {
    const double l = -4.0 + 8.0 * i / 40000;
    const double v = 0.5 * l * l + 10.0 / 3 * l * l * l + 1.5 * l * l * l * l;
    if (v < vbest) vbest = v, best = l;
  }
  double lo = best - 1e-3, hi = best + 1e-3;
  auto dv = [](double l) { return l + 10 * l * l + 6 * l * l * l; };
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dv(lo) * dv(mid) <= 0 ? hi : lo) = mid;
  }
  CHECK(ls == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  CHECK(interface_width(p) == doctest::Approx(0.3701).epsilon(1e-4));
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nematic/fit.hpp"
#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"
#include "oracles.hpp"

using namespace nematic;

namespace {

double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(0, i) - b(0, i)));
  return m;
}

ScalarField sampled_kernel(const GridSpec& g, double t) {
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f(0, i) = heat_kernel(g.position(i), t);
  return f;
}

}  // namespace

TEST_CASE("heat_kernel point values and mass") {
  CHECK(heat_kernel({0, 0, 0}, 1 / (4 * std::numbers::pi)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi1({0, 0, 0}, 0.0) == doctest::Approx(std::pow(4 * std::numbers::pi, -1.5)).epsilon(1e-15));
  const GridSpec g(64, 40.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) mass += heat_kernel(g.position(i), 1.0);
  CHECK(std::abs(mass * g.cell_volume() - 1.0) < 1e-8);
  CHECK(std::abs(integral(heat_kernel_field(g, 0.7)) - 1.0) < 1e-12);
}

TEST_CASE("heat_kernel_field peaks at the box centre") {
  const GridSpec g(32, 20.0);
  const auto k = heat_kernel_field(g, 1.0);
  const std::size_t c = g.index(16, 16, 16);
  for (std::size_t i = 0; i < k.size(); ++i) CHECK_LE(k(0, i), k(0, c));
  CHECK(k(0, c) == doctest::Approx(heat_kernel({0, 0, 0}, 1.0)).epsilon(1e-10));
}

TEST_CASE("apply_heat") {
  const GridSpec g(32, 12.0);
  std::mt19937 rng(oracle::seed());
  std::normal_distribution<double> d;
  ScalarField f(g);
  for (auto& v : f.plane(0)) v = d(rng);

  CHECK(max_diff(apply_heat(f, 0.0), f) < 1e-14);

  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 5; ++i) {
    const double s = u(rng), t = u(rng);
    CHECK(max_diff(apply_heat(apply_heat(f, s), t), apply_heat(f, s + t)) < 1e-12);
  }

  const HeatApplyPlan plan(g, std::vector<double>{0.3});
  CHECK(max_diff(plan.apply(f, 0.3), apply_heat(f, 0.3)) < 1e-14);
  CHECK(plan.apply(f, 0.3).time() == doctest::Approx(0.3));
}

TEST_CASE("apply_heat on sampled Gaussians matches the closed form") {
  const GridSpec g(64, 40.0);
  const auto evolved = apply_heat(sampled_kernel(g, 1.0), 2.0);
  CHECK(max_diff(evolved, sampled_kernel(g, 3.0)) < 1e-8);
}

TEST_CASE("zero_mean_residual") {
  // For u0 = Phi(., 1) the residual is exactly Phi(., t + 1) - Phi(., t).
  const GridSpec g(64, 40.0);
  const double t = 4.0;
  const auto r = zero_mean_residual(sampled_kernel(g, 1.0), t);
  CHECK(max_diff(r, sampled_kernel(g, t + 1) - sampled_kernel(g, t)) < 1e-8);

  ScalarField odd(g);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    const auto x = g.position(i);
    odd(0, i) = x[0] * heat_kernel(x, 1.0);
  }
  CHECK(max_diff(zero_mean_residual(odd, t), apply_heat(odd, t)) < 1e-12);
  CHECK_THROWS_AS(zero_mean_residual(odd, 0.0), std::invalid_argument);
}

TEST_CASE("odd data decay in sup norm at least like t^-2") {
  const GridSpec g(64, 64.0);
  ScalarField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = g.position(i);
    u(0, i) = x[0] * x[1] * heat_kernel(x, 0.25);
  }
  std::vector<double> lt, ls;
  for (int k = 0; k <= 10; ++k) {
    const double t = 5.0 * std::pow(10.0, k / 10.0);
    lt.push_back(std::log(t));
    ls.push_back(std::log(lp_norm(zero_mean_residual(u, t), INFINITY)));
  }
  CHECK(least_squares_line(lt, ls).slope <= -2.0);
}

TEST_CASE("decay bound pieces agree") {
  const GridSpec g(32, 24.0);
  ScalarField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = g.position(i);
    u(0, i) = x[0] * heat_kernel(x, 1.0);
  }
  const double mom = decay_bound_moment(u, 3.0, 2.0);
  CHECK(mom > 0.0);
  const Vec3 x{1.0, -2.0, 0.5};
  CHECK(decay_bound_shape(u, x, 3.0, 2.0) == doctest::Approx(decay_bound_profile(x, 3.0, 2.0, mom)));
  CHECK(decay_bound_profile({0, 0, 0}, 2.0, 2.0, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("mineineq_check") {
  const auto a = mineineq_check(3.0, 0.0, 1.0);
  CHECK(a.lhs == 0.0);
  CHECK(a.rhs_shape == 0.0);
  const auto b = mineineq_check(0.0, 1.0, 1.0);
  CHECK(b.lhs == doctest::Approx(0.7468241328124271).epsilon(1e-12));
  CHECK(b.rhs_shape == doctest::Approx(2.0));
  const auto c = mineineq_check(10.0, 1.0, 2.0);
  CHECK(c.lhs <= std::exp(-81.0));
  CHECK(c.rhs_shape == doctest::Approx(4.0 / 121.0));

  // Composite Simpson on the same intervals.
  for (auto [X, Y] : {std::pair{0.3, 2.0}, std::pair{2.0, 0.5}, std::pair{4.0, 4.0}, std::pair{6.0, 1.0}}) {
    const int n = 4000;
    const double h = Y / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double xi = X - Y + i * h;
      sum += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * std::exp(-xi * xi);
    }
    CHECK(mineineq_check(X, Y, 1.0).lhs == doctest::Approx(sum * h / 3).epsilon(1e-10));
  }
}

TEST_CASE("kernel_difference_bound_check") {
  const double c = std::pow(4 * std::numbers::pi, -1.5);
  const auto k = kernel_difference_bound_check({0, 0, 0}, 1.0);
  CHECK(k.diff == doctest::Approx(c * std::abs(std::pow(2.0, -1.5) - 1)).epsilon(1e-14));
  CHECK(k.bound == doctest::Approx(2 / std::pow(2.0, 2.5)).epsilon(1e-14));
  CHECK(k.diff <= k.bound);
  for (double t : {1.0, 4.0, 30.0}) {
    const auto far = kernel_difference_bound_check({10 * std::sqrt(t), 0, 0}, t);
    CHECK(far.diff <= far.bound);
    CHECK(far.bound < 2e-3 * kernel_difference_bound_check({0, 0, 0}, t).bound);
  }
  CHECK_THROWS_AS(kernel_difference_bound_check({0, 0, 0}, 0.5), std::invalid_argument);

  // diff at the origin decays like t^{-5/2}.
  const double r = kernel_difference_bound_check({0, 0, 0}, 200.0).diff / kernel_difference_bound_check({0, 0, 0}, 100.0).diff;
  CHECK(std::log(r) / std::log(2.0) == doctest::Approx(-2.5).epsilon(0.02));
}

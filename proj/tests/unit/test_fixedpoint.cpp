#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "nematic/dynamics.hpp"
#include "nematic/errors.hpp"
#include "nematic/fixedpoint.hpp"
#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"

using namespace nematic;

namespace {

const ModelParams kP(1, 10, 1, 1.0, 0.1);

std::vector<TensorField> zeros(const GridSpec& g, const TimeGrid& tg) {
  std::vector<TensorField> v;
  for (double t : tg.nodes()) v.emplace_back(g, t);
  return v;
}

TensorField dipole(const GridSpec& g) {
  TensorField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.position(i);
    set_tensor(f, i, (x[0] * heat_kernel(x, 1.0)) * TracelessSym3{0.5, -0.2, 0.3, 0.1, -0.4});
  }
  return f;
}

TimeGrid coarse_grid() { return TimeGrid::geometric(0.02, 1.3, TimeGrid::default_horizon(1.0), std::vector<double>{1.0, 5.0}); }

}  // namespace

TEST_CASE("TimeGrid") {
  const std::vector<double> extra{1.0, 5.0, 20.0};
  const auto tg = TimeGrid::geometric(0.01, 1.5, 30.0, extra);
  CHECK(tg[0] == 0.0);
  CHECK(tg[1] == doctest::Approx(0.01));
  CHECK(tg.horizon() >= 30.0);
  for (double e : extra) CHECK(tg.find(e).has_value());
  CHECK_FALSE(tg.find(0.7).has_value());
  for (std::size_t k = 1; k < tg.size(); ++k) CHECK(tg[k] > tg[k - 1]);

  const double T = TimeGrid::default_horizon(1.0);
  CHECK(std::exp(-T) * std::pow(T + 1, -3) <= 1e-12);
  CHECK(std::exp(-(T - 0.01)) * std::pow(T - 0.01 + 1, -3) > 1e-12);

  CHECK_THROWS_AS(TimeGrid({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("apply_F trivial cases") {
  const GridSpec g(16, 24.0);
  const auto tg = coarse_grid();
  const auto V = zeros(g, tg);
  CHECK(frobenius_norm(apply_F1({}, V, TensorField(g), kP, tg)) == 0.0);
  CHECK(lp_norm(apply_F2({}, V, TensorField(g), kP, tg, 1.0), INFINITY) == 0.0);

  const auto q0 = uniaxial_lift(power_tail_amplitude(g, 0.04, 1.0));
  const auto f1 = apply_F1({}, V, q0, kP, tg);
  CHECK(frobenius_norm(f1 - integral(q0)) <= 1e-14 * frobenius_norm(integral(q0)));

  const auto z = dipole(g);
  REQUIRE(frobenius_norm(integral(z)) < 1e-14);
  const auto f2 = apply_F2({}, V, z, kP, tg, 1.0);
  CHECK(lp_norm(f2 - apply_heat(z, 1.0), INFINITY) <= 1e-12 * lp_norm(z, INFINITY));

  CHECK_THROWS_AS(apply_F2({}, V, q0, kP, tg, 0.7), std::invalid_argument);
  const TimeGrid short_grid({0.0, 1.0, 2.0});
  CHECK_THROWS_AS(apply_F1({}, zeros(g, short_grid), q0, kP, short_grid), std::invalid_argument);
  CHECK_NOTHROW(apply_F1({}, zeros(g, short_grid), q0, kP, short_grid, false));
}

TEST_CASE("picard_solve") {
  const GridSpec g(16, 40.0);
  const auto tg = coarse_grid();
  PicardOptions opt;
  opt.tol = 1e-10;

  const auto zero = picard_solve(TensorField(g), kP, tg, opt);
  CHECK(zero.iterations == 1);
  CHECK(zero.converged);
  CHECK(frobenius_norm(zero.A) == 0.0);

  const auto q0 = uniaxial_lift(power_tail_amplitude(g, 0.04, 1.0));
  const auto s = picard_solve(q0, kP, tg, opt);
  CHECK(s.converged);
  CHECK(s.small_data);
  CHECK(s.q0_a_norm == doctest::Approx(std::sqrt(6.0) * 0.04));
  for (double r : s.ratios) CHECK(r <= 0.55);

  // Self-consistency of the fixed point at every node.
  const FImage img = apply_F(s.A, s.V, q0, kP, tg);
  CHECK(frobenius_norm(img.F1 - s.A) <= 1e-8 * frobenius_norm(s.A));
  for (std::size_t k = 1; k < tg.size(); ++k) {
    const double v = lp_norm(s.V[k], 2);
    CHECK(lp_norm(img.F2[k] - s.V[k], 2) <= 1e-6 * v);
  }

  // Uniaxial data keep a uniaxial A with negative amplitude.
  CHECK(s.A.q11 < 0.0);
  CHECK(s.A.q11 == doctest::Approx(s.A.q22));
  CHECK(std::abs(s.A.q12) < 1e-14);

  const auto rec = reconstruct(s, kP, *tg.find(1.0));
  CHECK(rec.time() == 1.0);
  CHECK_THROWS_AS(reconstruct(s, kP, tg.size()), std::out_of_range);
}

TEST_CASE("pure heat decomposition") {
  const GridSpec g(16, 40.0);
  const auto tg = coarse_grid();
  const auto q0 = uniaxial_lift(power_tail_amplitude(g, 0.04, 1.0));
  PicardOptions opt;
  opt.reaction = false;
  const auto s = picard_solve(q0, kP, tg, opt);
  CHECK(frobenius_norm(s.A - integral(q0)) <= 1e-14 * frobenius_norm(s.A));
}

TEST_CASE("extract_A") {
  const GridSpec g(16, 40.0);
  const auto tg = coarse_grid();
  SimConfig cfg{g, 0.02, tg.horizon(), tg.nodes(), Scheme::ETD2, true};
  cfg.snapshot_times.erase(cfg.snapshot_times.begin());  // t = 0 is added below

  const auto zero = evolve_tensor(TensorField(g), kP, cfg);
  TensorTrajectory zt = zero;
  zt.snapshots.insert(zt.snapshots.begin(), TensorField(g));
  CHECK(frobenius_norm(extract_A(zt, kP).A) == 0.0);

  const auto q0 = uniaxial_lift(power_tail_amplitude(g, 0.04, 1.0));
  auto heat_cfg = cfg;
  heat_cfg.reaction = false;
  auto heat = evolve_tensor(q0, kP, heat_cfg);
  heat.snapshots.insert(heat.snapshots.begin(), q0);
  CHECK(frobenius_norm(extract_A(heat, kP).A - integral(q0)) == 0.0);

  auto tr = evolve_tensor(q0, kP, cfg);
  tr.snapshots.insert(tr.snapshots.begin(), q0);
  const auto ex = extract_A(tr, kP);
  CHECK(frobenius_inner(ex.A, make_uniaxial(1.0)) < 0.0);
  CHECK(frobenius_norm(ex.A) > 10 * ex.error_bar);
  CHECK_FALSE(ex.flagged);

  PicardOptions opt;
  opt.tol = 1e-10;
  const auto s = picard_solve(q0, kP, tg, opt);
  CHECK(frobenius_norm(ex.A - s.A) <= 0.02 * frobenius_norm(s.A));

  TensorTrajectory late = tr;
  late.snapshots.erase(late.snapshots.begin());
  CHECK_THROWS_AS(extract_A(late, kP), std::invalid_argument);
}

TEST_CASE("v_decay_check") {
  const GridSpec g(16, 40.0);
  const auto tg = TimeGrid::geometric(0.5, 1.3, 60.0);
  DecompositionState zero;
  zero.time_grid = tg;
  zero.V = zeros(g, tg);
  CHECK(v_decay_check(zero).passed);

  // V = W / omega with W bounded.
  DecompositionState syn;
  syn.time_grid = tg;
  for (double t : tg.nodes()) {
    TensorField v(g, t);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto x = g.position(i);
      const double w = std::exp(-0.1 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
      set_tensor(v, i, (w / x0_weight(x, t, 1.0)) * make_uniaxial(1.0));
    }
    syn.V.push_back(std::move(v));
  }
  const auto rep = v_decay_check(syn);
  CHECK(rep.passed);
  CHECK(rep.slope <= -1.25);
  CHECK(x0_norm(syn.V, tg, 1.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  CHECK_THROWS_AS(v_decay_check(syn, 1.0, 3.0), std::invalid_argument);
}

TEST_CASE("decomposition files round-trip") {
  const GridSpec g(8, 20.0);
  const auto tg = TimeGrid::geometric(0.05, 2.0, TimeGrid::default_horizon(1.0));
  PicardOptions opt;
  opt.tol = 1e-10;
  const auto s = picard_solve(uniaxial_lift(power_tail_amplitude(g, 0.02, 1.0)), kP, tg, opt);
  const auto dir = std::filesystem::temp_directory_path() / "nematic_decomp_test";
  std::filesystem::remove_all(dir);
  save_decomposition(dir, s, kP);
  CHECK(std::filesystem::exists(dir / "A.json"));
  CHECK(std::filesystem::exists(dir / "meta.json"));
  CHECK(std::filesystem::exists(dir / "V_t0.qtf1"));

  const auto back = load_decomposition(dir);
  CHECK(back.A == s.A);
  CHECK(back.time_grid.nodes() == s.time_grid.nodes());
  CHECK(back.iterations == s.iterations);
  REQUIRE(back.V.size() == s.V.size());
  CHECK(lp_norm(back.V.back() - s.V.back(), INFINITY) == 0.0);

  std::filesystem::remove(dir / "V_t1.qtf1");
  CHECK_THROWS_AS(load_decomposition(dir), MissingInput);
  std::ofstream(dir / "meta.json") << "{ not json";
  CHECK_THROWS_AS(load_decomposition(dir), FormatError);
  CHECK_THROWS_AS(load_decomposition(dir / "absent"), MissingInput);
  std::filesystem::remove_all(dir);
}

TEST_CASE("calibrate_eta") {
  const GridSpec g(16, 40.0);
  const auto tg = coarse_grid();
  PicardOptions opt;
  opt.tol = 1e-8;
  const std::vector<double> alphas{0.04, 0.01};
  const auto cal = calibrate_eta(kP, g, tg, alphas, 0.5, opt);
  REQUIRE(cal.probes.size() == 2);
  CHECK(cal.eta == doctest::Approx(std::sqrt(6.0) * 0.04));
  for (const auto& p : cal.probes) CHECK(p.max_ratio <= 0.5);
}

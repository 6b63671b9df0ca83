#include "nematic/heatflow.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nematic {

double heat_kernel(const Vec3& x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel requires t > 0");
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  return std::exp(-r2 / (4.0 * t)) / std::pow(4.0 * std::numbers::pi * t, 1.5);
}

double phi1(const Vec3& x, double t) {
  if (t < 0.0) throw std::invalid_argument("phi1 requires t >= 0");
  return heat_kernel(x, t + 1.0);
}

ScalarField heat_kernel_field(const GridSpec& grid, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_field requires t > 0");
  const auto sg = SpectralGrid::shared(grid);
  auto spec = sg->make_spectrum();
  const auto k2 = sg->k2();
  const double inv_cell = 1.0 / grid.cell_volume();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = std::exp(-k2[i] * t) * inv_cell;
  ScalarField centred(grid);
  sg->inverse(spec, centred.plane(0));
  // The transform puts the peak at index 0; x = 0 sits at index n/2.
  const int half = grid.n() / 2;
  return shift_sample(centred, {half, half, half});
}

ScalarField phi1_field(const GridSpec& grid, double t) {
  if (t < 0.0) throw std::invalid_argument("phi1_field requires t >= 0");
  return heat_kernel_field(grid, t + 1.0);
}

HeatApplyPlan::HeatApplyPlan(const GridSpec& grid, std::span<const double> times)
    : sg_(SpectralGrid::shared(grid)) {
  for (double t : times) cached_.emplace(t, symbol(t));
}

std::vector<double> HeatApplyPlan::symbol(double t) const {
  if (t < 0.0) throw std::invalid_argument("heat evolution requires t >= 0");
  const auto k2 = sg_->k2();
  std::vector<double> s(k2.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(-k2[i] * t);
  return s;
}

std::vector<double> HeatApplyPlan::symbol_ref(double t) const {
  auto it = cached_.find(t);
  if (it != cached_.end()) return it->second;
  return symbol(t);
}

TensorField apply_heat(const TensorField& f, double t) {
  if (t == 0.0) return f;
  return HeatApplyPlan(f.grid()).apply(f, t);
}

ScalarField apply_heat(const ScalarField& f, double t) {
  if (t == 0.0) return f;
  return HeatApplyPlan(f.grid()).apply(f, t);
}

ScalarField zero_mean_residual(const ScalarField& u0, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("zero_mean_residual requires t > 0");
  ScalarField out = apply_heat(u0, t);
  const double mass = integral(u0);
  const ScalarField kernel = heat_kernel_field(u0.grid(), t);
  for (std::size_t i = 0; i < out.size(); ++i) out(0, i) -= mass * kernel(0, i);
  return out;
}

double decay_bound_moment(const ScalarField& u0, double t, double beta) {
  if (!(t > 0.0)) throw std::invalid_argument("decay bound requires t > 0");
  const double s = std::sqrt(8.0 * t);
  const GridSpec& g = u0.grid();
  double moment = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double v = u0(0, i);
    if (v == 0.0) continue;
    const double r = norm(g.position(i));
    moment += r * std::pow(1.0 + r / s, beta) * std::abs(v);
  }
  return moment * g.cell_volume();
}

double decay_bound_shape(const ScalarField& u0, const Vec3& x, double t, double beta) {
  return decay_bound_profile(x, t, beta, decay_bound_moment(u0, t, beta));
}

double decay_bound_profile(const Vec3& x, double t, double beta, double moment) {
  if (!(t > 0.0)) throw std::invalid_argument("decay bound requires t > 0");
  return std::pow(t, -2.0) * std::pow(1.0 + norm(x) / std::sqrt(8.0 * t), -beta) * moment;
}

MineIneqSample mineineq_check(double X, double Y, double beta) {
  if (X < 0.0 || Y < 0.0) throw std::invalid_argument("mineineq_check requires X, Y >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("mineineq_check requires beta > 0");
  // erfc keeps precision when both ends sit far in the tail.
  const double half_sqrt_pi = 0.5 * std::sqrt(std::numbers::pi);
  double lhs = 0.0;
  if (Y > 0.0) {
    lhs = X - Y >= 0.0 ? half_sqrt_pi * (std::erfc(X - Y) - std::erfc(X))
                       : half_sqrt_pi * (std::erf(X) - std::erf(X - Y));
  }
  return {lhs, Y * std::pow((1.0 + Y) / (1.0 + X), beta)};
}

KernelDifference kernel_difference_bound_check(const Vec3& x, double t) {
  if (!(t >= 1.0)) throw std::invalid_argument("kernel_difference_bound_check requires t >= 1");
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double diff = std::abs(phi1(x, t) - heat_kernel(x, t));
  const double bound = 2.0 * std::exp(-r2 / (8.0 * (t + 1.0))) / std::pow(t + 1.0, 2.5);
  return {diff, bound};
}

}  // namespace nematic

#pragma once

#include <map>
#include <span>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

/// Fundamental solution e^{-|x|^2/4t} / (4 pi t)^{3/2}. Requires t > 0.
double heat_kernel(const Vec3& x, double t);
/// Shifted kernel heat_kernel(x, t + 1). Requires t >= 0.
double phi1(const Vec3& x, double t);

/// Heat kernel on the periodic grid: the band-limited field whose Fourier
/// coefficients are exactly e^{-|k|^2 t}. Unit mass; e^{s Delta} maps the
/// field at t to the field at t + s with no error. Requires t > 0.
ScalarField heat_kernel_field(const GridSpec& grid, double t);
/// heat_kernel_field(grid, t + 1).
ScalarField phi1_field(const GridSpec& grid, double t);

/// Fourier multipliers e^{-|k|^2 t} for a fixed set of times.
///
/// Symbols are computed at construction, so a plan can be shared between
/// threads. Times outside the set are evaluated on the fly.
class HeatApplyPlan {
 public:
  HeatApplyPlan(const GridSpec& grid, std::span<const double> times = {});

  const GridSpec& grid() const { return sg_->grid(); }
  const SpectralGrid& spectral() const { return *sg_; }

  std::vector<double> symbol(double t) const;

  template <std::size_t N>
  GridField<N> apply(const GridField<N>& f, double t) const {
    GridField<N> out(f.grid(), f.time() + t);
    const auto sym = symbol_ref(t);
    auto spec = sg_->make_spectrum();
    for (std::size_t c = 0; c < N; ++c) {
      sg_->forward(f.plane(c), spec);
      for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= sym[i];
      sg_->inverse(spec, out.plane(c));
    }
    return out;
  }

 private:
  std::vector<double> symbol_ref(double t) const;

  std::shared_ptr<const SpectralGrid> sg_;
  std::map<double, std::vector<double>> cached_;
};

/// e^{t Delta} f on the periodic grid (exact per Fourier mode). Requires t >= 0.
TensorField apply_heat(const TensorField& f, double t);
ScalarField apply_heat(const ScalarField& f, double t);

/// e^{t Delta} u0 - Phi(., t) * integral(u0), the deviation from the
/// mass-weighted heat kernel. Requires t > 0.
ScalarField zero_mean_residual(const ScalarField& u0, double t);

/// Right-hand side of the pointwise zero-mean decay bound without its
/// constant: t^{-2} (1 + |x|/sqrt(8t))^{-beta} * integral |y| (1 + |y|/sqrt(8t))^beta |u0(y)| dy.
double decay_bound_shape(const ScalarField& u0, const Vec3& x, double t, double beta);
/// The integral factor of decay_bound_shape, which depends on t but not x.
double decay_bound_moment(const ScalarField& u0, double t, double beta);
/// decay_bound_shape with the integral factor supplied.
double decay_bound_profile(const Vec3& x, double t, double beta, double moment);

struct MineIneqSample {
  double lhs;        ///< integral of e^{-xi^2} over [X - Y, X]
  double rhs_shape;  ///< Y ((1 + Y)/(1 + X))^beta
};
/// Both sides of the error-function inequality behind the decay estimate.
MineIneqSample mineineq_check(double X, double Y, double beta);

struct KernelDifference {
  double diff;   ///< |Phi(x, t+1) - Phi(x, t)|
  double bound;  ///< 2 e^{-|x|^2/8(t+1)} / (t+1)^{5/2}
};
/// Requires t >= 1.
KernelDifference kernel_difference_bound_check(const Vec3& x, double t);

}  // namespace nematic

#pragma once

// Exponential time differencing for du/dt = -(|k|^2 + rate) u + N(u, t) on
// the periodic grid. Internal to the core library.

#include <cmath>
#include <functional>
#include <map>
#include <memory>

#include "nematic/dynamics.hpp"
#include "nematic/spectral.hpp"

namespace nematic::detail {

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2.
inline void phi_functions(double z, double& p1, double& p2) {
  if (std::abs(z) < 0.5) {
    // Taylor series: phi_j(z) = sum_n z^n / (n + j)!
    double term1 = 1.0, term2 = 0.5;
    p1 = 0.0;
    p2 = 0.0;
    for (int n = 0; n < 24; ++n) {
      p1 += term1;
      p2 += term2;
      term1 *= z / (n + 2);
      term2 *= z / (n + 3);
    }
    return;
  }
  const double em1 = std::expm1(z);
  p1 = em1 / z;
  p2 = (em1 - z) / (z * z);
}

template <std::size_t N>
class EtdIntegrator {
 public:
  using Field = GridField<N>;
  /// Writes N(u, t) into `out` (same grid); `u` carries the time tag.
  using Nonlinear = std::function<void(const Field& u, double t, Field& out)>;

  EtdIntegrator(const GridSpec& grid, double rate, Nonlinear nonlinear, Scheme scheme)
      : sg_(SpectralGrid::shared(grid)),
        rate_(rate),
        nonlinear_(std::move(nonlinear)),
        scheme_(scheme),
        state_(grid),
        work_(grid),
        nl_(grid),
        nl_stage_(grid) {
    for (std::size_t c = 0; c < N; ++c) {
      spec_[c] = sg_->make_spectrum();
      nspec_[c] = sg_->make_spectrum();
      stage_[c] = sg_->make_spectrum();
    }
  }

  void reset(const Field& u0) {
    state_ = u0;
    for (std::size_t c = 0; c < N; ++c) sg_->forward(state_.plane(c), spec_[c]);
  }

  const Field& state() const { return state_; }
  void set_time(double t) { state_.set_time(t); }
  const ComplexBuffer& spectrum(std::size_t c) const { return spec_[c]; }
  const SpectralGrid& spectral() const { return *sg_; }

  void advance(double dt) {
    const Coefficients& co = coefficients(dt);
    const double t0 = state_.time();
    const std::size_t ns = sg_->spectral_size();
    if (!nonlinear_) {
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t i = 0; i < ns; ++i) spec_[c][i] *= co.e[i];
        sg_->inverse(spec_[c], state_.plane(c));
      }
      state_.set_time(t0 + dt);
      return;
    }

    nonlinear_(state_, t0, nl_);
    for (std::size_t c = 0; c < N; ++c) {
      sg_->forward(nl_.plane(c), nspec_[c]);
      for (std::size_t i = 0; i < ns; ++i) stage_[c][i] = co.e[i] * spec_[c][i] + co.p1[i] * nspec_[c][i];
    }
    if (scheme_ == Scheme::ETD1) {
      for (std::size_t c = 0; c < N; ++c) {
        spec_[c].swap(stage_[c]);
        sg_->inverse(spec_[c], state_.plane(c));
      }
      state_.set_time(t0 + dt);
      return;
    }

    for (std::size_t c = 0; c < N; ++c) sg_->inverse(stage_[c], work_.plane(c));
    work_.set_time(t0 + dt);
    nonlinear_(work_, t0 + dt, nl_stage_);
    for (std::size_t c = 0; c < N; ++c) {
      sg_->forward(nl_stage_.plane(c), spec_[c]);  // reuse as scratch for N(a)
      for (std::size_t i = 0; i < ns; ++i)
        spec_[c][i] = stage_[c][i] + co.p2[i] * (spec_[c][i] - nspec_[c][i]);
      sg_->inverse(spec_[c], state_.plane(c));
    }
    state_.set_time(t0 + dt);
  }

 private:
  struct Coefficients {
    std::vector<double> e, p1, p2;  // e^{L dt}, dt phi1(L dt), dt phi2(L dt)
  };

  const Coefficients& coefficients(double dt) {
    auto it = cache_.find(dt);
    if (it != cache_.end()) return it->second;
    if (cache_.size() > 8) cache_.clear();
    const auto k2 = sg_->k2();
    Coefficients co;
    co.e.resize(k2.size());
    co.p1.resize(k2.size());
    co.p2.resize(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) {
      const double z = -(k2[i] + rate_) * dt;
      double p1, p2;
      phi_functions(z, p1, p2);
      co.e[i] = std::exp(z);
      co.p1[i] = dt * p1;
      co.p2[i] = dt * p2;
    }
    return cache_.emplace(dt, std::move(co)).first->second;
  }

  std::shared_ptr<const SpectralGrid> sg_;
  double rate_;
  Nonlinear nonlinear_;
  Scheme scheme_;
  Field state_, work_, nl_, nl_stage_;
  std::array<ComplexBuffer, N> spec_, nspec_, stage_;
  std::map<double, Coefficients> cache_;
};

}  // namespace nematic::detail

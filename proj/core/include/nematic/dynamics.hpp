#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nematic/field.hpp"
#include "nematic/qtensor.hpp"

namespace nematic {

enum class Scheme { ETD1, ETD2 };

/// Time-stepping configuration shared by the tensor, scalar and transformed
/// solvers. Snapshots are taken exactly at `snapshot_times`; the step is
/// shortened where needed to land on them.
struct SimConfig {
  GridSpec grid;
  double dt = 0.01;
  double t_final = 1.0;
  std::vector<double> snapshot_times;
  Scheme scheme = Scheme::ETD2;
  /// false switches the reaction off entirely (pure heat equation).
  bool reaction = true;

  /// Throws std::invalid_argument on dt <= 0, dt > t_final, or unsorted,
  /// duplicate, negative or out-of-range snapshot times.
  void validate() const;
};

struct DiagnosticSample {
  double t;
  double energy;
  double l2norm;
  double linfnorm;
};

template <class Field>
struct Trajectory {
  SimConfig config;
  ModelParams params;
  std::vector<Field> snapshots;
  std::vector<DiagnosticSample> diagnostics;
  /// Snapshots hold R = e^{at} Q instead of Q.
  bool transformed = false;

  /// Concatenates a run that started from this one's final state. The first
  /// diagnostic sample of `later` duplicates our last and is dropped, as is a
  /// leading snapshot at the join time.
  void append(Trajectory&& later) {
    const double join = diagnostics.empty() ? -INFINITY : diagnostics.back().t;
    auto d = later.diagnostics.begin();
    if (d != later.diagnostics.end() && std::abs(d->t - join) <= 1e-12 * (1.0 + std::abs(join))) ++d;
    diagnostics.insert(diagnostics.end(), d, later.diagnostics.end());
    for (auto& s : later.snapshots)
      if (snapshots.empty() || s.time() > snapshots.back().time() + 1e-12) snapshots.push_back(std::move(s));
    config.t_final = later.config.t_final;
  }

  /// Snapshot whose time tag equals t (to 1e-9); nullptr if absent.
  const Field* at_time(double t) const {
    for (const auto& s : snapshots)
      if (std::abs(s.time() - t) <= 1e-9 * (1.0 + std::abs(t))) return &s;
    return nullptr;
  }
};

using TensorTrajectory = Trajectory<TensorField>;
using ScalarTrajectory = Trajectory<ScalarField>;

/// Gradient flow dQ/dt = Delta Q - aQ + b(Q^2 - tr(Q^2)/3 I) - c tr(Q^2) Q.
/// Exponential time differencing: the linear part -(|k|^2 + a) is applied
/// exactly per mode, the rest by the ETD1 or ETD2 (Cox-Matthews RK) rule.
/// Throws NumericAbort on nonfinite output or runaway amplitude.
TensorField step_tensor(const TensorField& f, const ModelParams& p, double dt,
                        Scheme scheme = Scheme::ETD2, bool reaction = true);
TensorTrajectory evolve_tensor(const TensorField& q0, const ModelParams& p, const SimConfig& cfg);

/// Uniaxial amplitude equation dl/dt = Delta l - a l - b l^2 - 6c l^3.
ScalarField step_scalar(const ScalarField& l, const ModelParams& p, double dt,
                        Scheme scheme = Scheme::ETD2, bool reaction = true);
ScalarTrajectory evolve_scalar(const ScalarField& l0, const ModelParams& p, const SimConfig& cfg);

/// Transformed equation dR/dt = Delta R + h(R, t) for R = e^{at} Q, with
/// its own stepper (linear symbol -|k|^2, time-dependent nonlinearity).
/// The field's time tag is the physical time t.
TensorField step_transformed(const TensorField& r, const ModelParams& p, double dt,
                             Scheme scheme = Scheme::ETD2, bool reaction = true);
TensorTrajectory evolve_transformed(const TensorField& r0, const ModelParams& p, const SimConfig& cfg);

/// Scales pointwise by e^{+a t} (to) or e^{-a t} (from), t the time tag.
TensorField to_transformed(const TensorField& q, const ModelParams& p);
TensorField from_transformed(const TensorField& r, const ModelParams& p);

/// Amplitude above which a run is declared blown up: 30 (1 + |lambda*|).
double blowup_threshold(const ModelParams& p);

struct L2GrowthReport {
  bool passed = true;
  double growth_constant = 0.0;  ///< 2 (b^2/2c - a), or 0 with reaction off
  double worst_excess = 0.0;     ///< max over steps of lhs - (rhs + tol); <= 0 when passed
  std::optional<std::size_t> offending_step;
};

/// Discrete check of d/dt ||Q||_2^2 <= 2 (b^2/2c - a) ||Q||_2^2 on the
/// diagnostics series, tolerance 1e-6 max(1, ||Q||_2^2) per step.
L2GrowthReport l2_growth_check(const TensorTrajectory& traj, const ModelParams& p);
L2GrowthReport l2_growth_check(const ScalarTrajectory& traj, const ModelParams& p);

/// Radius of the level set |l| = level, from the outermost crossing along the
/// six axis rays through the box centre (linearly interpolated between
/// nodes), averaged over the rays. nullopt ("no front") when some ray never
/// reaches the level.
std::optional<double> front_radius(const ScalarField& l, double level);

struct FrontFit {
  double c_bar;         ///< least-squares slope of radius against time
  double intercept;
  double fit_residual;  ///< max |residual| / radius range (absolute when the range is 0)
  std::vector<double> times;
  std::vector<double> radii;
};

/// Throws std::invalid_argument for fewer than five snapshots in
/// [t_begin, t_end] and std::runtime_error when a snapshot has no front.
FrontFit front_speed(const ScalarTrajectory& traj, double level, double t_begin, double t_end);

}  // namespace nematic

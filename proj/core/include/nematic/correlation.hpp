#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nematic/dynamics.hpp"
#include "nematic/field.hpp"

namespace nematic {

/// Radial profile of the normalised two-point correlation at one time.
///
/// Offsets are minimum-image lattice vectors r. Bins have width equal to the
/// grid spacing and are centred on j * spacing; a bin holds the mean of c over
/// its offsets. Shells group offsets of exactly equal |r| and keep the min and
/// max of c, so sup-type errors can be taken over every offset.
struct CorrelationProfile {
  double t = 0.0;
  int n = 0;
  double box_len = 0.0;
  double normalization = 0.0;  ///< unnormalised value at r = 0 (the squared L2 norm)

  std::vector<double> r_bins;
  std::vector<double> c_values;
  std::vector<std::size_t> bin_counts;

  std::vector<double> shell_r;
  std::vector<double> shell_min;
  std::vector<double> shell_max;

  double spacing() const { return box_len / n; }
};

/// Unnormalised autocorrelation S(r) = integral tr(Q(x + r) Q(x)) dx for every
/// lattice offset, stored at the offset's wrapped grid index.
ScalarField autocorrelation(const TensorField& f);
/// Scalar fields count as their uniaxial lift (factor 6).
ScalarField autocorrelation(const ScalarField& l);

/// Normalises and bins an autocorrelation. Throws std::invalid_argument when
/// the value at r = 0 is not positive.
CorrelationProfile profile_from_autocorrelation(const ScalarField& s, double t);

/// Throws std::invalid_argument for a zero field.
CorrelationProfile correlate_single(const TensorField& f);
CorrelationProfile correlate_single(const ScalarField& l);

/// sum_j w_j S_j(r) / sum_j w_j S_j(0). Weights must be positive and sum to 1
/// within 1e-12; every field must carry the same grid and time tag.
CorrelationProfile ensemble_correlate(const std::vector<const TensorField*>& members,
                                      const std::vector<double>& weights);

/// Ensemble of trajectories read at time t. Throws MissingInput listing the
/// available times when some member has no snapshot at t.
CorrelationProfile ensemble_correlate(const std::vector<TensorTrajectory>& trajs, const std::vector<double>& weights,
                                      double t);

/// Validates ensemble weights; throws std::invalid_argument.
void check_ensemble_weights(const std::vector<double>& weights);

/// sup over offsets with |r| <= r_max of |c(r) - e^{-|r|^2/8t}|; r_max
/// defaults to box_len/4. Requires prof.t > 0.
double gaussian_regime_error(const CorrelationProfile& prof, std::optional<double> r_max = std::nullopt);

/// Normalised overlap of two balls of radius c_bar at separation z:
/// (4 c_bar + z)(2 c_bar - z)^2 / (16 c_bar^3) for z <= 2 c_bar, else 0.
double ball_overlap_correlation(double z, double c_bar);

/// sup over offsets with |r| <= r_max of |c(r) - ball_overlap_correlation(|r|/t, c_bar)|;
/// r_max defaults to box_len/2.
double ballistic_regime_error(const CorrelationProfile& prof, double c_bar,
                              std::optional<double> r_max = std::nullopt);

enum class Regime { GaussianSqrtT, BallisticT };

struct RegimeFit {
  Regime regime = Regime::GaussianSqrtT;
  double slope = 0.0;
  double r_squared = 0.0;
  double c_bar = 0.0;  ///< ballistic only
  std::vector<std::pair<double, double>> errors;
  double t_begin = 0.0, t_end = 0.0;
};

struct RateFit {
  double slope;
  double r_squared;
};

/// Least-squares slope of log e against log t. Nonpositive errors are dropped;
/// throws std::invalid_argument when fewer than five remain or they span less
/// than one decade in t.
RateFit rate_fit(const std::vector<std::pair<double, double>>& errors);

/// Profile as CSV "r,c" (bin centres) and a JSON sidecar with t, grid,
/// normalisation and optional regime-fit results.
void write_profile_csv(const std::filesystem::path& path, const CorrelationProfile& prof);
std::string profile_sidecar_json(const CorrelationProfile& prof, const RegimeFit* fit = nullptr);

}  // namespace nematic

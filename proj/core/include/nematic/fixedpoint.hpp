#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "nematic/dynamics.hpp"
#include "nematic/field.hpp"
#include "nematic/qtensor.hpp"

namespace nematic {

/// Time nodes 0 = t_0 < t_1 < ... < t_m on which V is stored. The last node is
/// the horizon T at which the infinite time integrals are cut.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> nodes);

  /// 0, t_first, t_first rho, t_first rho^2, ... up to and including a node
  /// >= horizon, with `extra` times merged in (duplicates within 1e-9 dropped).
  static TimeGrid geometric(double t_first, double rho, double horizon, std::span<const double> extra = {});

  /// Smallest T with e^{-aT} (T + 1)^{-3} <= 1e-12.
  static double default_horizon(double a);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t k) const { return nodes_[k]; }
  double horizon() const { return nodes_.back(); }
  std::optional<std::size_t> find(double t) const;

 private:
  std::vector<double> nodes_;
};

/// The pair (A, V) of Q = A e^{-at} Phi_1 + e^{-at} V on a time grid.
struct DecompositionState {
  TracelessSym3 A;
  TimeGrid time_grid{{0.0, 1.0}};
  std::vector<TensorField> V;
  double x0_norm_estimate = 0.0;

  // Picard bookkeeping.
  int iterations = 0;
  bool converged = false;
  std::vector<double> increments;  ///< ||(A, V)_k - (A, V)_{k-1}||_X
  std::vector<double> ratios;      ///< increments[k] / increments[k-1]
  double max_iterate_norm = 0.0;   ///< largest ||(A, V)_k||_X seen
  double eps0 = 0.0;               ///< ball radius the iterates were checked against
  bool stayed_in_ball = true;
  double q0_a_norm = 0.0;
  bool small_data = true;          ///< q0_a_norm <= eta
};

/// max over stored nodes and grid points of omega(x, t) |V(x, t)|.
double x0_norm(const std::vector<TensorField>& V, const TimeGrid& grid, double delta);

/// |A| + x0_norm(V).
double pair_norm(const TracelessSym3& A, const std::vector<TensorField>& V, const TimeGrid& grid, double delta);

struct FImage {
  TracelessSym3 F1;
  std::vector<TensorField> F2;  ///< one field per time node
  TracelessSym3 h_integral;     ///< integral of h over space and [0, infinity)
  double tail = 0.0;            ///< |extrapolated part beyond the horizon|
};

/// Both components of F at once. Time integrals treat R^2 - tr(R^2)/3 I and
/// tr(R^2) R as linear in s between nodes and integrate the exponential
/// factors e^{-as}, e^{-2as} and the heat symbol exactly. Throws
/// std::invalid_argument when the horizon fails e^{-aT}(T+1)^{-2} < 1e-10 or
/// V does not match the grid.
FImage apply_F(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0,
               const ModelParams& p, const TimeGrid& grid, bool reaction = true);

TracelessSym3 apply_F1(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0,
                       const ModelParams& p, const TimeGrid& grid, bool reaction = true);

/// F2 at node t_eval (must be a grid node).
TensorField apply_F2(const TracelessSym3& A, const std::vector<TensorField>& V, const TensorField& q0,
                     const ModelParams& p, const TimeGrid& grid, double t_eval, bool reaction = true);

struct PicardOptions {
  int max_iter = 60;
  double tol = 1e-13;
  bool reaction = true;
  double eps0 = 1.0;
};

/// Iterates (A, V) <- F(A, V) from (0, 0) until the X-norm increment drops
/// below tol. Never throws on non-convergence: check `converged` and the
/// ratio history. Data above the smallness threshold eta proceeds with
/// small_data = false.
DecompositionState picard_solve(const TensorField& q0, const ModelParams& p, const TimeGrid& grid,
                                const PicardOptions& opt = {});

/// e^{-at}(A Phi_1 + V) at node k.
TensorField reconstruct(const DecompositionState& s, const ModelParams& p, std::size_t k);

struct ExtractResult {
  TracelessSym3 A;
  double error_bar = 0.0;  ///< |full - every-other-snapshot estimate| + tail
  double tail = 0.0;
  bool flagged = false;    ///< tail above tolerance
};

/// integral q0 + integral_0^T integral h(R, s) over the trajectory snapshots
/// (the first must sit at t = 0), plus an exponential tail beyond T. Accepts
/// plain or transformed trajectories.
ExtractResult extract_A(const TensorTrajectory& traj, const ModelParams& p, double tail_tol = 1e-8);

struct VDecayReport {
  bool passed = true;
  double slope = 0.0;
  double r_squared = 1.0;
  double threshold = -1.25 + 0.15;
  std::size_t samples = 0;
};

/// Log-log slope of ||V(t)||_2 against t + 1 over nodes with t in
/// [t_begin, t_end]. Throws std::invalid_argument for fewer than five nodes
/// or a window under one decade in t + 1. V = 0 passes trivially.
VDecayReport v_decay_check(const DecompositionState& s, double t_begin = 1.0,
                           double t_end = std::numeric_limits<double>::infinity(), double threshold = -1.25 + 0.15);

struct EtaProbe {
  double alpha;
  double a_norm;
  double max_ratio;  ///< largest contraction ratio after the first iteration
  bool converged;
};

struct EtaCalibration {
  double eta = 0.0;  ///< largest probe a_norm with max_ratio <= target
  std::vector<EtaProbe> probes;
};

/// Runs picard_solve on the uniaxial power-tail family at each alpha.
EtaCalibration calibrate_eta(const ModelParams& p, const GridSpec& grid, const TimeGrid& times,
                             std::span<const double> alphas, double target_ratio = 0.5,
                             const PicardOptions& opt = {});

/// Directory layout: A.json, V_t<k>.qtf1 per node, meta.json.
void save_decomposition(const std::filesystem::path& dir, const DecompositionState& s, const ModelParams& p);
DecompositionState load_decomposition(const std::filesystem::path& dir);

}  // namespace nematic

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <new>
#include <span>
#include <stdexcept>
#include <vector>

#include "nematic/qtensor.hpp"

namespace nematic {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

/// 64-byte aligned storage so field planes can be handed to the FFT directly.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlign));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;

/// Uniform periodic grid on the cube [-L/2, L/2)^3.
///
/// Node (i, j, k) sits at ((i - n/2) h, (j - n/2) h, (k - n/2) h) with h = L/n,
/// so the cube centre is a grid node. Linear index is x-fastest.
class GridSpec {
 public:
  GridSpec(int n, double box_len);

  int n() const { return n_; }
  double box_len() const { return box_len_; }
  double spacing() const { return box_len_ / n_; }
  double cell_volume() const { const double h = spacing(); return h * h * h; }
  double volume() const { return box_len_ * box_len_ * box_len_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * (j + static_cast<std::size_t>(n_) * k);
  }
  std::array<int, 3> unravel(std::size_t idx) const {
    const auto nn = static_cast<std::size_t>(n_);
    return {static_cast<int>(idx % nn), static_cast<int>((idx / nn) % nn), static_cast<int>(idx / (nn * nn))};
  }
  double coordinate(int i) const { return (i - n_ / 2) * spacing(); }
  Vec3 position(std::size_t idx) const {
    const auto ijk = unravel(idx);
    return {coordinate(ijk[0]), coordinate(ijk[1]), coordinate(ijk[2])};
  }
  /// Minimum-image lattice offset of index i, in [-n/2, n/2).
  int signed_offset(int i) const { return i < n_ / 2 ? i : i - n_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
  double box_len_;
};

/// Periodic samples of an N-component field, stored as N planes.
///
/// N = 5 holds a Sym0(3)-valued field in TracelessSym3 component order;
/// N = 1 holds a scalar field.
template <std::size_t N>
class GridField {
 public:
  static constexpr std::size_t kComponents = N;

  explicit GridField(const GridSpec& grid, double time = 0.0) : grid_(grid), time_(time) {
    for (auto& p : planes_) p.assign(grid.size(), 0.0);
  }

  const GridSpec& grid() const { return grid_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  std::size_t size() const { return grid_.size(); }

  std::span<double> plane(std::size_t c) { return planes_[c]; }
  std::span<const double> plane(std::size_t c) const { return planes_[c]; }
  RealBuffer& plane_buffer(std::size_t c) { return planes_[c]; }
  const RealBuffer& plane_buffer(std::size_t c) const { return planes_[c]; }

  double& operator()(std::size_t c, std::size_t idx) { return planes_[c][idx]; }
  double operator()(std::size_t c, std::size_t idx) const { return planes_[c][idx]; }

  GridField& operator+=(const GridField& o) {
    check_same_grid(o);
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t i = 0; i < size(); ++i) planes_[c][i] += o.planes_[c][i];
    return *this;
  }
  GridField& operator-=(const GridField& o) {
    check_same_grid(o);
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t i = 0; i < size(); ++i) planes_[c][i] -= o.planes_[c][i];
    return *this;
  }
  GridField& operator*=(double s) {
    for (auto& p : planes_)
      for (auto& v : p) v *= s;
    return *this;
  }
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(double s, GridField a) { return a *= s; }

  bool all_finite() const {
    for (const auto& p : planes_)
      for (double v : p)
        if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  void check_same_grid(const GridField& o) const {
    if (!(o.grid_ == grid_)) throw std::invalid_argument("fields live on different grids");
  }

  GridSpec grid_;
  double time_;
  std::array<RealBuffer, N> planes_;
};

using TensorField = GridField<TracelessSym3::kComponents>;
using ScalarField = GridField<1>;

inline TracelessSym3 tensor_at(const TensorField& f, std::size_t idx) {
  return {f(0, idx), f(1, idx), f(2, idx), f(3, idx), f(4, idx)};
}
inline void set_tensor(TensorField& f, std::size_t idx, const TracelessSym3& q) {
  f(0, idx) = q.q11; f(1, idx) = q.q22; f(2, idx) = q.q12; f(3, idx) = q.q13; f(4, idx) = q.q23;
}

/// Pointwise magnitude: Frobenius norm for tensors, |value| for scalars.
inline double magnitude_at(const TensorField& f, std::size_t idx) { return frobenius_norm(tensor_at(f, idx)); }
inline double magnitude_at(const ScalarField& f, std::size_t idx) { return std::abs(f(0, idx)); }

/// Uniaxial lift diag(l, l, -2l) of a scalar field.
TensorField uniaxial_lift(const ScalarField& l);

/// Discrete L^p norm (midpoint quadrature, cell volume h^3); p = INFINITY gives the max.
/// Throws std::invalid_argument for p < 1.
double lp_norm(const TensorField& f, double p);
double lp_norm(const ScalarField& f, double p);

/// max over the grid of (1 + |x|)^{8 + delta} |Q(x)|, |x| measured from the box centre.
double a_norm(const TensorField& f, double delta);

/// Space-time weight (1 + |x|/sqrt(t+1))^{4 + delta/2} (t+1)^2.
double x0_weight(const Vec3& x, double t, double delta);

/// Integral of each component over the box.
TracelessSym3 integral(const TensorField& f);
double integral(const ScalarField& f);

/// Landau-de Gennes energy: sum of (1/2)|grad Q|^2 + f_B(Q) times cell volume,
/// with the gradient taken spectrally.
double total_energy(const TensorField& f, const ModelParams& p);
double total_energy(const TensorField& f, const Kinetics& k);
/// Energy of the uniaxial lift of a scalar amplitude field.
double total_energy(const ScalarField& l, const Kinetics& k);

/// Periodic translation: result(x) = f(x + r h).
template <std::size_t N>
GridField<N> shift_sample(const GridField<N>& f, const std::array<int, 3>& r) {
  const GridSpec& g = f.grid();
  const int n = g.n();
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  GridField<N> out(g, f.time());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t src = g.index(wrap(i + r[0]), wrap(j + r[1]), wrap(k + r[2]));
        const std::size_t dst = g.index(i, j, k);
        for (std::size_t c = 0; c < N; ++c) out(c, dst) = f(c, src);
      }
  return out;
}

}  // namespace nematic

#pragma once

#include <array>
#include <cstddef>

namespace nematic {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// A point of Sym0(3): a traceless symmetric 3x3 matrix.
///
/// Only the five independent entries are stored; q33 = -q11 - q22 is implied,
/// so every value of this type is traceless and symmetric by construction.
struct TracelessSym3 {
  static constexpr std::size_t kComponents = 5;

  double q11 = 0.0;
  double q22 = 0.0;
  double q12 = 0.0;
  double q13 = 0.0;
  double q23 = 0.0;

  constexpr double q33() const { return -q11 - q22; }

  /// Component order (q11, q22, q12, q13, q23); also the plane order of
  /// tensor snapshots.
  constexpr std::array<double, kComponents> components() const {
    return {q11, q22, q12, q13, q23};
  }
  static constexpr TracelessSym3 from_components(const std::array<double, kComponents>& c) {
    return {c[0], c[1], c[2], c[3], c[4]};
  }

  Matrix3 matrix() const;

  /// Symmetrises `m` and removes its trace.
  static TracelessSym3 project(const Matrix3& m);

  constexpr TracelessSym3& operator+=(const TracelessSym3& o) {
    q11 += o.q11; q22 += o.q22; q12 += o.q12; q13 += o.q13; q23 += o.q23;
    return *this;
  }
  constexpr TracelessSym3& operator-=(const TracelessSym3& o) {
    q11 -= o.q11; q22 -= o.q22; q12 -= o.q12; q13 -= o.q13; q23 -= o.q23;
    return *this;
  }
  constexpr TracelessSym3& operator*=(double s) {
    q11 *= s; q22 *= s; q12 *= s; q13 *= s; q23 *= s;
    return *this;
  }
  friend constexpr TracelessSym3 operator+(TracelessSym3 a, const TracelessSym3& b) { return a += b; }
  friend constexpr TracelessSym3 operator-(TracelessSym3 a, const TracelessSym3& b) { return a -= b; }
  friend constexpr TracelessSym3 operator*(double s, TracelessSym3 a) { return a *= s; }
  friend constexpr TracelessSym3 operator*(TracelessSym3 a, double s) { return a *= s; }
  friend constexpr bool operator==(const TracelessSym3&, const TracelessSym3&) = default;
};

/// Landau-de Gennes coefficients plus the smallness-theory constants.
///
/// Construction enforces the uniaxial-bistability region b^2 > 27ac with
/// a, b, c > 0, and delta, eta > 0. Throws std::invalid_argument otherwise.
class ModelParams {
 public:
  ModelParams(double a, double b, double c, double delta = 1.0, double eta = 0.1);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double delta() const { return delta_; }
  double eta() const { return eta_; }

  ModelParams with_eta(double eta) const { return {a_, b_, c_, delta_, eta}; }

 private:
  double a_, b_, c_, delta_, eta_;
};

/// Reaction coefficients actually applied by the solvers. `pure_heat()`
/// switches the whole reaction (including the -aQ term) off.
struct Kinetics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static Kinetics of(const ModelParams& p) { return {p.a(), p.b(), p.c()}; }
  static Kinetics pure_heat() { return {}; }
  static Kinetics select(const ModelParams& p, bool reaction) {
    return reaction ? of(p) : pure_heat();
  }
  bool active() const { return a != 0.0 || b != 0.0 || c != 0.0; }
};

TracelessSym3 make_uniaxial(double lambda);

/// tr(PQ).
double frobenius_inner(const TracelessSym3& p, const TracelessSym3& q);
double frobenius_norm(const TracelessSym3& q);
inline double trace_sq(const TracelessSym3& q) { return frobenius_inner(q, q); }
double trace_cube(const TracelessSym3& q);

/// Q^2 - (1/3) tr(Q^2) I.
TracelessSym3 traceless_square(const TracelessSym3& q);

/// -aQ + b(Q^2 - tr(Q^2)/3 I) - c tr(Q^2) Q.
TracelessSym3 reaction_rhs(const TracelessSym3& q, const ModelParams& p);
TracelessSym3 reaction_rhs(const TracelessSym3& q, const Kinetics& k);

/// Nonlinearity of the transformed equation for R = e^{at} Q:
/// b e^{-at}(R^2 - tr(R^2)/3 I) - c e^{-2at} tr(R^2) R.
TracelessSym3 nonlinearity_h(const TracelessSym3& r, double t, const ModelParams& p);
TracelessSym3 nonlinearity_h(const TracelessSym3& r, double t, const Kinetics& k);

/// (a/2) tr(Q^2) - (b/3) tr(Q^3) + (c/4) tr(Q^2)^2.
double bulk_energy_density(const TracelessSym3& q, const ModelParams& p);
double bulk_energy_density(const TracelessSym3& q, const Kinetics& k);

/// Reduced potential of the uniaxial amplitude, (a/2)l^2 + (b/3)l^3 + (3c/2)l^4.
/// bulk_energy_density(make_uniaxial(l)) equals 6 times this value.
double uniaxial_potential(double lambda, const ModelParams& p);

/// Scalar reaction -a l - b l^2 - 6c l^3 of the uniaxial amplitude equation.
inline double uniaxial_reaction(double lambda, const Kinetics& k) {
  return -lambda * (k.a + lambda * (k.b + 6.0 * k.c * lambda));
}

/// Global minimiser of uniaxial_potential. Throws std::domain_error when no
/// critical point with negative energy exists.
double lambda_star(const ModelParams& p);

/// Width of the planar travelling-wave interface, 1 / (sqrt(3c) |lambda*|).
double interface_width(const ModelParams& p);

}  // namespace nematic

#pragma once

#include "nematic/field.hpp"

namespace nematic {

/// -alpha / (1 + |x|)^{8 + delta}: the small nonpositive amplitude family.
/// Its uniaxial lift has a_norm sqrt(6) alpha.
ScalarField power_tail_amplitude(const GridSpec& grid, double alpha, double delta);

/// Uniaxial tensor l (I - 3 n n^T) with director n (normalised internally).
/// With n = e3 this is make_uniaxial(l).
TracelessSym3 uniaxial_along(double lambda, const Vec3& director);

/// Lift of a scalar amplitude along a fixed director.
TensorField uniaxial_lift_along(const ScalarField& l, const Vec3& director);

/// value on the open ball |x| < radius, zero outside.
ScalarField plateau_amplitude(const GridSpec& grid, double radius, double value);

/// amplitude * Phi(x, t): pointwise samples of the heat kernel.
ScalarField gaussian_amplitude(const GridSpec& grid, double amplitude, double t);

/// A0 * Phi(x, t) sampled pointwise.
TensorField gaussian_tensor(const GridSpec& grid, const TracelessSym3& a0, double t);

}  // namespace nematic

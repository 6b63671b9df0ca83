#include "nematic/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "nematic/heatflow.hpp"

namespace nematic {

ScalarField power_tail_amplitude(const GridSpec& grid, double alpha, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  ScalarField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i)
    out(0, i) = -alpha / std::pow(1.0 + norm(grid.position(i)), 8.0 + delta);
  return out;
}

TracelessSym3 uniaxial_along(double lambda, const Vec3& director) {
  const double len = norm(director);
  if (!(len > 0.0)) throw std::invalid_argument("director must be nonzero");
  const Vec3 n{director[0] / len, director[1] / len, director[2] / len};
  Matrix3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = lambda * ((i == j ? 1.0 : 0.0) - 3.0 * n[i] * n[j]);
  return TracelessSym3::project(m);
}

TensorField uniaxial_lift_along(const ScalarField& l, const Vec3& director) {
  const TracelessSym3 unit = uniaxial_along(1.0, director);
  TensorField out(l.grid(), l.time());
  for (std::size_t i = 0; i < out.size(); ++i) set_tensor(out, i, l(0, i) * unit);
  return out;
}

ScalarField plateau_amplitude(const GridSpec& grid, double radius, double value) {
  if (!(radius > 0.0)) throw std::invalid_argument("plateau radius must be positive");
  ScalarField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (norm(grid.position(i)) < radius) out(0, i) = value;
  return out;
}

ScalarField gaussian_amplitude(const GridSpec& grid, double amplitude, double t) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) out(0, i) = amplitude * heat_kernel(grid.position(i), t);
  return out;
}

TensorField gaussian_tensor(const GridSpec& grid, const TracelessSym3& a0, double t) {
  TensorField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) set_tensor(out, i, heat_kernel(grid.position(i), t) * a0);
  return out;
}

}  // namespace nematic

#include "nematic/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nematic/spectral.hpp"

namespace nematic {

GridSpec::GridSpec(int n, double box_len) : n_(n), box_len_(box_len) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size n must be a power of two and at least 8");
  }
  if (!(box_len > 0.0) || !std::isfinite(box_len)) {
    throw std::invalid_argument("box length must be positive and finite");
  }
}

TensorField uniaxial_lift(const ScalarField& l) {
  TensorField out(l.grid(), l.time());
  for (std::size_t i = 0; i < l.size(); ++i) {
    out(0, i) = l(0, i);
    out(1, i) = l(0, i);
  }
  return out;
}

namespace {

template <std::size_t N>
double lp_norm_impl(const GridField<N>& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, magnitude_at(f, i));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double m = magnitude_at(f, i);
      acc += m * m;
    }
    return std::sqrt(acc * f.grid().cell_volume());
  }
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(magnitude_at(f, i), p);
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const TensorField& f, double p) { return lp_norm_impl(f, p); }
double lp_norm(const ScalarField& f, double p) { return lp_norm_impl(f, p); }

double a_norm(const TensorField& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("a_norm requires delta > 0");
  const GridSpec& g = f.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mag = magnitude_at(f, i);
    if (mag == 0.0) continue;
    m = std::max(m, std::pow(1.0 + norm(g.position(i)), 8.0 + delta) * mag);
  }
  return m;
}

double x0_weight(const Vec3& x, double t, double delta) {
  if (t < 0.0) throw std::invalid_argument("x0_weight requires t >= 0");
  const double s = t + 1.0;
  return std::pow(1.0 + norm(x) / std::sqrt(s), 4.0 + 0.5 * delta) * s * s;
}

TracelessSym3 integral(const TensorField& f) {
  std::array<double, 5> acc{};
  for (std::size_t c = 0; c < 5; ++c)
    for (double v : f.plane(c)) acc[c] += v;
  for (auto& v : acc) v *= f.grid().cell_volume();
  return TracelessSym3::from_components(acc);
}

double integral(const ScalarField& f) {
  double acc = 0.0;
  for (double v : f.plane(0)) acc += v;
  return acc * f.grid().cell_volume();
}

double total_energy(const TensorField& f, const Kinetics& k) {
  const auto sg = SpectralGrid::shared(f.grid());
  auto spec = sg->make_spectrum();
  // |grad Q|^2 over all nine entries: diagonal weight 1, off-diagonal weight 2.
  double dirichlet = 0.0;
  RealBuffer q33(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) q33[i] = -f(0, i) - f(1, i);
  for (std::size_t c = 0; c < 5; ++c) {
    sg->forward(f.plane(c), spec);
    dirichlet += (c < 2 ? 1.0 : 2.0) * parseval_dirichlet(*sg, spec);
  }
  sg->forward(q33, spec);
  dirichlet += parseval_dirichlet(*sg, spec);

  double bulk = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) bulk += bulk_energy_density(tensor_at(f, i), k);
  return 0.5 * dirichlet + bulk * f.grid().cell_volume();
}

double total_energy(const TensorField& f, const ModelParams& p) {
  return total_energy(f, Kinetics::of(p));
}

double total_energy(const ScalarField& l, const Kinetics& k) {
  const auto sg = SpectralGrid::shared(l.grid());
  auto spec = sg->make_spectrum();
  sg->forward(l.plane(0), spec);
  const double dirichlet = parseval_dirichlet(*sg, spec);
  double bulk = 0.0;
  for (double v : l.plane(0)) bulk += bulk_energy_density(make_uniaxial(v), k);
  // |grad diag(l, l, -2l)|^2 = 6 |grad l|^2
  return 3.0 * dirichlet + bulk * l.grid().cell_volume();
}

}  // namespace nematic

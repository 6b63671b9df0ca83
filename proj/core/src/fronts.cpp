#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nematic/dynamics.hpp"

namespace nematic {

std::optional<double> front_radius(const ScalarField& l, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("front level must be positive");
  const GridSpec& g = l.grid();
  const int n = g.n();
  const int c = n / 2;
  const double h = g.spacing();
  double sum = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    for (int dir : {1, -1}) {
      // +x reaches n/2 - 1 nodes out, -x reaches n/2.
      const int steps = dir > 0 ? n / 2 - 1 : n / 2;
      auto value = [&](int s) {
        std::array<int, 3> ijk{c, c, c};
        ijk[axis] = c + dir * s;
        return std::abs(l(0, g.index(ijk[0], ijk[1], ijk[2])));
      };
      int last = -1;
      for (int s = 0; s <= steps; ++s)
        if (value(s) >= level) last = s;
      if (last < 0) return std::nullopt;
      double r = h * last;
      if (last < steps) {
        const double v0 = value(last), v1 = value(last + 1);
        r += h * (v0 - level) / (v0 - v1);
      }
      sum += r;
    }
  }
  return sum / 6.0;
}

FrontFit front_speed(const ScalarTrajectory& traj, double level, double t_begin, double t_end) {
  FrontFit fit{};
  for (const auto& s : traj.snapshots) {
    if (s.time() < t_begin - 1e-12 || s.time() > t_end + 1e-12) continue;
    const auto r = front_radius(s, level);
    if (!r) throw std::runtime_error("no front at t = " + std::to_string(s.time()));
    fit.times.push_back(s.time());
    fit.radii.push_back(*r);
  }
  const std::size_t m = fit.times.size();
  if (m < 5) throw std::invalid_argument("front_speed needs at least five snapshots in the window");

  double mt = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mt += fit.times[i];
    mr += fit.radii[i];
  }
  mt /= m;
  mr /= m;
  double stt = 0.0, str = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    stt += (fit.times[i] - mt) * (fit.times[i] - mt);
    str += (fit.times[i] - mt) * (fit.radii[i] - mr);
  }
  fit.c_bar = str / stt;
  fit.intercept = mr - fit.c_bar * mt;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    worst = std::max(worst, std::abs(fit.radii[i] - (fit.intercept + fit.c_bar * fit.times[i])));
  const auto [lo, hi] = std::minmax_element(fit.radii.begin(), fit.radii.end());
  const double range = *hi - *lo;
  fit.fit_residual = range > 0.0 ? worst / range : worst;
  return fit;
}

}  // namespace nematic

#pragma once

#include <span>

namespace nematic {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope x. Needs two distinct x values.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace nematic

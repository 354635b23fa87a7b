#pragma once

#include <span>

namespace cutting_forge {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Least squares on (log x, log y).
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace cutting_forge

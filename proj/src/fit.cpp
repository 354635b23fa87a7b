#include "cutting_forge/fit.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "cutting_forge/error.hpp"

namespace cutting_forge {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::PreconditionViolated, "least_squares needs at least two paired samples");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = x[static_cast<std::size_t>(i)];
    design(i, 1) = 1.0;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::Vector2d beta = design.colPivHouseholderQr().solve(rhs);
  return {beta(0), beta(1)};
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) lx[i] = std::log(x[i]);
  for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log(y[i]);
  return least_squares(lx, ly);
}

}  // namespace cutting_forge

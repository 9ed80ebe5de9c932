#include "shallowwell/polyfit.hpp"

#include "shallowwell/error.hpp"

#include <Eigen/Dense>

#include <string>

namespace shallowwell {

std::vector<double> polyfit(std::span<const double> xs,
                            std::span<const double> ys, int degree) {
  if (xs.size() != ys.size())
    throw Error(ErrorCode::LengthMismatch, "polyfit abscissas and values");
  if (degree < 0 || xs.size() <= static_cast<std::size_t>(degree))
    throw Error(ErrorCode::NoConvergence,
                "polyfit of degree " + std::to_string(degree) + " needs more than " +
                    std::to_string(degree) + " points");
  const auto n = static_cast<Eigen::Index>(xs.size());
  // scale the abscissa so the Vandermonde columns are comparable
  double scale = 0.0;
  for (double x : xs)
    scale = std::max(scale, std::abs(x));
  if (scale == 0.0)
    scale = 1.0;
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = 1.0;
    for (int k = 0; k <= degree; ++k) {
      A(i, k) = t;
      t *= xs[i] / scale;
    }
    b(i) = ys[i];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < degree + 1)
    throw Error(ErrorCode::NoConvergence, "polyfit design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(b);
  std::vector<double> out(static_cast<std::size_t>(degree) + 1);
  double f = 1.0;
  for (int k = 0; k <= degree; ++k) {
    out[k] = c(k) / f;
    f *= scale;
  }
  return out;
}

double polyval(std::span<const double> a, double x) {
  double r = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    r = r * x + *it;
  return r;
}

} // namespace shallowwell

#include "shallowwell/resummation.hpp"

#include "shallowwell/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace shallowwell {

PadeApproximant pade(std::span<const double> c, int m, int n) {
  if (m < 0 || n < 0)
    throw Error(ErrorCode::SingularPade, "negative Pade degree");
  if (c.size() < static_cast<std::size_t>(m + n + 1))
    throw Error(ErrorCode::SingularPade,
                "[" + std::to_string(m) + "/" + std::to_string(n) + "] needs " +
                    std::to_string(m + n + 1) + " coefficients, got " +
                    std::to_string(c.size()));
  auto coef = [&](int k) { return k < 0 ? 0.0 : c[k]; };

  PadeApproximant pa;
  pa.q.assign(static_cast<std::size_t>(n) + 1, 0.0);
  pa.q[0] = 1.0;
  if (n > 0) {
    // sum_{j=1..n} q_j c_{k-j} = -c_k for k = m+1 .. m+n
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int r = 0; r < n; ++r) {
      const int k = m + 1 + r;
      for (int j = 1; j <= n; ++j)
        A(r, j - 1) = coef(k - j);
      b(r) = -coef(k);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond >= 1e-12))
      throw Error(ErrorCode::SingularPade,
                  "denominator system has reciprocal condition " +
                      std::to_string(rcond));
    const Eigen::VectorXd x = lu.solve(b);
    for (int j = 1; j <= n; ++j)
      pa.q[j] = x(j - 1);
  }
  pa.p.assign(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= std::min(k, n); ++j)
      pa.p[k] += pa.q[j] * coef(k - j);
  return pa;
}

PadeApproximant pade_with_asymptote(const EnergySeries &es,
                                    double depth_coefficient, int m, int n) {
  const double alpha = -depth_coefficient;
  std::vector<double> d(static_cast<std::size_t>(es.order) + 1, 0.0);
  for (int k = 1; k <= es.order; ++k)
    d[k] = es.coefficients[k];
  d[1] -= alpha;
  PadeApproximant pa = pade(d, m, n);
  pa.alpha = alpha;
  return pa;
}

double evaluate_pade(const PadeApproximant &pa, double s) {
  double num = 0.0;
  for (auto it = pa.p.rbegin(); it != pa.p.rend(); ++it)
    num = num * s + *it;
  double den = 0.0;
  double scale = 0.0;
  double t = 1.0;
  for (double qi : pa.q) {
    den += qi * t;
    scale += std::abs(qi * t);
    t *= s;
  }
  if (std::abs(den) <= 1e-12 * scale)
    throw Error(ErrorCode::PoleAtEvaluation,
                "denominator vanishes at s = " + std::to_string(s));
  return pa.alpha * s + num / den;
}

std::vector<double> pade_taylor(const PadeApproximant &pa, int count) {
  // r = p / q  <=>  r_k = p_k - sum_{j>=1} q_j r_{k-j}
  std::vector<double> r(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  for (int k = 0; k < count; ++k) {
    double v = k <= pa.m() ? pa.p[k] : 0.0;
    for (int j = 1; j <= std::min(k, pa.n()); ++j)
      v -= pa.q[j] * r[k - j];
    r[k] = v;
  }
  if (count > 1)
    r[1] += pa.alpha;
  return r;
}

} // namespace shallowwell

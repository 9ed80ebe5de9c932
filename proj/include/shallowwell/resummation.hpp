#pragma once

#include "shallowwell/perturbation.hpp"

#include <span>
#include <vector>

namespace shallowwell {

/// alpha s + (p_0 + p_1 s + ... + p_m s^m) / (1 + q_1 s + ... + q_n s^n)
struct PadeApproximant {
  std::vector<double> p;
  std::vector<double> q; // q[0] == 1
  double alpha{0.0};

  int m() const { return static_cast<int>(p.size()) - 1; }
  int n() const { return static_cast<int>(q.size()) - 1; }
};

/// [m/n] approximant of c_0 + c_1 s + ... from its first m + n + 1
/// coefficients. The denominator comes from partial-pivoting LU of the
/// n x n Toeplitz system; SingularPade if its reciprocal condition number
/// is below 1e-12 or fewer than m + n + 1 coefficients are given.
PadeApproximant pade(std::span<const double> c, int m, int n);

/// Splits off the strong-coupling asymptote E ~ alpha s with
/// alpha = -depth_coefficient, then builds the [m/n] approximant of the
/// remainder E(s) - alpha s from c_0 = 0, c_1 + depth, c_2 ... c_order.
PadeApproximant pade_with_asymptote(const EnergySeries &es,
                                    double depth_coefficient, int m = 3,
                                    int n = 3);

/// alpha s + p(s)/q(s). PoleAtEvaluation if |q(s)| <= 1e-12 sum |q_i s^i|.
double evaluate_pade(const PadeApproximant &pa, double s);

/// First `count` Taylor coefficients of the approximant about s = 0
/// (alpha included in the linear coefficient).
std::vector<double> pade_taylor(const PadeApproximant &pa, int count);

} // namespace shallowwell

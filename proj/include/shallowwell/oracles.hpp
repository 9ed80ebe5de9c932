#pragma once

#include "shallowwell/potential.hpp"

namespace shallowwell {

/// Ground state of -d^2/dx^2 + V found by shooting.
struct BoundStateResult {
  double energy{0.0};
  /// Normalized Wronskian of the left and right solutions at x = 0.
  double residual{0.0};
  int iterations{0};
  double E_lo{0.0};
  double E_hi{0.0};
  /// |E(h) - E(h/2)| / 15, the Richardson estimate of the step error.
  double step_error{0.0};
};

/// Even ground state of the square well of depth s and halfwidth a:
/// sqrt(s - k^2) tan(a sqrt(s - k^2)) = k, E = -k^2, bisected to full
/// double precision.
double exact_square_well(double s, double a = 1.0);

/// E = -k^2, k = (sqrt(1 + 4 s) - 1) / 2, for V = -s / cosh^2 x.
double exact_poschl_teller(double s);

/// Integrates u'' = (V - E) u inwards from x = -L and x = +L with decaying
/// asymptotic data (L = support radius) by fixed-step RK4 with h ~ L/4000,
/// steps aligned to the potential's breakpoints. The ground state is
/// bracketed by Sturm node counting between E = -s max(shape) and E -> 0-,
/// then the Wronskian root is polished in that bracket. The returned energy
/// comes from the h/2 integration.
///
/// Throws BracketFailure if the well has no bound state above the lower
/// bracket, NoConvergence if the iteration limit is hit or the step-halving
/// check disagrees by more than max(100 tol, 1e-7 |E|).
BoundStateResult shooting_solve(const Potential &p, double tol = 1e-12);

/// Normalized Wronskian at x = 0 for trial energy E < 0 using `steps` RK4
/// steps per half-domain. Exposed for tests.
double shooting_residual(const Potential &p, double E, int steps = 8000);

/// Gaussian-well coefficients from the closed forms with the F and G
/// integrands (error-function expressions), integrated over [-10, 10].
struct GaussianClosedCoefficients {
  double c4{0.0};
  double c5{0.0};
  double c6{0.0};
  double integral_F{0.0};
  double integral_G{0.0};
};
GaussianClosedCoefficients gaussian_closed_coefficients();

double gaussian_F(double x);
double gaussian_G(double x);

} // namespace shallowwell

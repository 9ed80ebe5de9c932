#pragma once

#include "shallowwell/potential.hpp"
#include "shallowwell/quadrature.hpp"

namespace shallowwell {

enum class TrialKind {
  Gaussian, // psi = exp(-alpha x^2)
  ExpSqrt,  // psi = exp(-alpha (sqrt(beta^2 + x^2) - beta))
};

/// A trial wavefunction. ExpSqrt is stored shifted by exp(alpha beta), which
/// only rescales psi and keeps it O(1) for large alpha beta.
struct TrialFamily {
  TrialKind kind{TrialKind::Gaussian};
  double alpha{1.0};
  double beta{0.0}; // ExpSqrt only
  double amplitude{1.0}; // overall factor; the quotient does not see it

  double psi(double x) const;
  double dpsi(double x) const;
};

/// (<psi'|psi'> + <psi|V|psi>) / <psi|psi>.
///
/// The potential term is integrated on g. The norm and kinetic integrals
/// are taken on a separate grid that follows psi out to psi^2 ~ e^-70,
/// with panel edges at +-beta 2^k for ExpSqrt so the sqrt(beta^2 + x^2)
/// crossover is resolved. Throws NonNormalizable for inadmissible
/// parameters or a norm that is not a positive finite number.
double rayleigh_quotient(const TrialFamily &tf, const Potential &p,
                         const QuadratureGrid &g);

struct VariationalResult {
  TrialFamily family;
  double energy{0.0};
  int evaluations{0};
};

/// Nelder-Mead on log(alpha) (and log(beta)) restarted from every point of
/// the ladder alpha in {0.05, 0.2, 1, 5} x beta in {0.2, 1, 5}; the lowest
/// energy wins, ties broken by smaller parameters. Throws OptimizerStalled
/// when no restart converges.
VariationalResult minimize(TrialKind kind, const Potential &p,
                           const QuadratureGrid &g);

} // namespace shallowwell

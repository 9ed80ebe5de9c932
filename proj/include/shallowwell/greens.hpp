#pragma once

#include "shallowwell/error.hpp"
#include "shallowwell/factor_graph.hpp"
#include "shallowwell/potential.hpp"
#include "shallowwell/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace shallowwell {

/// Regulator delta strength beta (H0 = -d^2/dx^2 - 2 beta delta(x)) and
/// resolvent shift gamma.
struct GreensParams {
  double beta{0.0};
  double gamma{0.0};

  double Gamma() const { return std::sqrt(beta * beta + gamma); }
};

namespace detail {

// Six-region closed form of the shifted reduced resolvent. Also used with
// multiprecision scalars and small negative gamma by the Taylor check.
template <class T>
T greens_closed(const T &beta, const T &gamma, const T &x1, const T &x2) {
  using std::exp;
  using std::sqrt;
  const T G = sqrt(beta * beta + gamma);
  const T c = beta * G - gamma + G * G; // = beta (beta + G)
  const T two_g = 2 * gamma;
  if (x1 >= x2) {
    if (x2 >= 0)
      return (c * exp(-G * (x1 + x2)) + gamma * exp(-G * (x1 - x2)) -
              2 * beta * G * exp(-beta * (x1 + x2))) /
             (two_g * G);
    if (x1 < 0)
      return (c * exp(G * (x1 + x2)) - 2 * beta * G * exp(beta * (x1 + x2)) +
              gamma * exp(G * (x2 - x1))) /
             (two_g * G);
    return ((beta + G) * exp(-G * (x1 - x2)) -
            2 * beta * exp(-beta * (x1 - x2))) /
           two_g;
  }
  if (x1 >= 0)
    return (gamma * exp(-G * (x2 - x1)) + c * exp(-G * (x1 + x2)) -
            2 * beta * G * exp(-beta * (x1 + x2))) /
           (two_g * G);
  if (x2 < 0)
    return (c * exp(G * (x1 + x2)) - 2 * beta * G * exp(beta * (x1 + x2)) +
            gamma * exp(G * (x1 - x2))) /
           (two_g * G);
  return ((beta + G) * exp(G * (x1 - x2)) - 2 * beta * exp(beta * (x1 - x2))) /
         two_g;
}

} // namespace detail

/// <x1| Omega_gamma |x2>. Regions are split by the ordering of x1, x2 and
/// their signs; ties go to x1 >= x2 and x >= 0. Throws DegenerateShift
/// unless beta > 0 and gamma > 0.
double greens_closed(const GreensParams &params, double x1, double x2);

/// Truncated small-beta expansion of <x1| Omega^{l+1} |x2>, 0 <= l <= 3,
/// from the leading 1/beta^{2l+1} term through beta^0.
double greens_expansion(int l, double beta, double x1, double x2);

/// (-1)^l / l! d^l/dgamma^l of greens_closed at gamma = 0, from an exact
/// degree-7 polynomial through gamma = +-h, +-2h, +-3h, +-4h with
/// h = 1e-3 beta^2, evaluated in 50-digit arithmetic. 0 <= l <= 3.
double greens_taylor_coefficient(int l, double beta, double x1, double x2);

/// The three blocks of the finite-beta fourth-order energy written in terms
/// of the expanded Green's functions, before any relabeling.
struct FourthOrderBlocks {
  double divergent{0.0};  // (|x12| + |x23| - 2|x34|) / (32 beta)
  double polynomial{0.0}; // quadratic polynomial / 64
  double regular{0.0};    // the |x| |x-y| block
  double total() const { return divergent + polynomial + regular; }
};

/// Integrands of the blocks as factor-graph terms over four sites.
/// divergent_block_terms() omits the 1/(32 beta) prefactor.
std::vector<FactorGraphTerm> divergent_block_terms();
std::vector<FactorGraphTerm> polynomial_block_terms();
std::vector<FactorGraphTerm> regular_block_terms();

/// Site measure V(x) e^{-beta |x|}: the potential weighted by the regulator
/// ground state psi_0 / sqrt(beta).
GridFunction regulated_measure(const Potential &p, const QuadratureGrid &g,
                               double beta);

/// Fourth-order energy at finite beta. The grid must have a panel edge at
/// x = 0 (build_grid always places one there for even P); throws
/// InvalidGridSpec otherwise.
FourthOrderBlocks e4_finite_beta_blocks(const Potential &p,
                                        const QuadratureGrid &g, double beta);
double e4_finite_beta(const Potential &p, const QuadratureGrid &g,
                      double beta);

/// The divergent integrand (without 1/(32 beta)) averaged over all 24
/// relabelings of the four sites, at one point.
double symmetrized_divergent_kernel(const std::array<double, 4> &x);

/// The divergent block integral averaged over all 24 relabelings, and the
/// scale it should be compared against: the mean over relabelings of
/// sum |coefficient * term|.
struct SymmetrizedBlock {
  double value{0.0};
  double scale{0.0};
};
SymmetrizedBlock symmetrized_divergent_block(const Potential &p,
                                             const QuadratureGrid &g,
                                             double beta);

/// Residual r(beta) = e4_finite_beta(beta) - e4 and the polynomial
/// r ~ intercept + slope beta + curvature beta^2 through it.
struct ResidualFit {
  std::vector<double> betas;
  std::vector<double> residuals;
  double e4{0.0};
  double intercept{0.0};
  double slope{0.0};
  double curvature{0.0};
};
ResidualFit e4_residual_fit(const Potential &p, const QuadratureGrid &g,
                            std::vector<double> betas = {0.02, 0.01, 0.005});

} // namespace shallowwell

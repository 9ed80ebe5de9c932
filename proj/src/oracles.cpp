#include "shallowwell/oracles.hpp"

#include "shallowwell/error.hpp"
#include "shallowwell/quadrature.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace shallowwell {

namespace {

constexpr int base_steps = 4000;
constexpr int max_iterations = 200;

struct State {
  double u;
  double du;
};

// Fixed-step RK4 for u'' = (V - E) u on a list of step abscissas.
class Shooter {
public:
  Shooter(const Potential &p, int steps) : m_p(p) {
    m_L = support_radius(p);
    const double h = m_L / steps;
    std::vector<double> cuts{-m_L};
    for (double b : p.breakpoints())
      if (b > -m_L && b < 0.0)
        cuts.push_back(b);
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    m_left.push_back(-m_L);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = cuts[i + 1] - cuts[i];
      const int n = std::max(1, static_cast<int>(std::lround(len / h)));
      for (int k = 1; k < n; ++k)
        m_left.push_back(cuts[i] + len * k / n);
      m_left.push_back(cuts[i + 1]);
    }
    // right half: mirror of the breakpoints in (0, L)
    std::vector<double> rcuts{0.0};
    for (double b : p.breakpoints())
      if (b > 0.0 && b < m_L)
        rcuts.push_back(b);
    rcuts.push_back(m_L);
    std::sort(rcuts.begin(), rcuts.end());
    std::vector<double> right{0.0};
    for (std::size_t i = 0; i + 1 < rcuts.size(); ++i) {
      const double len = rcuts[i + 1] - rcuts[i];
      const int n = std::max(1, static_cast<int>(std::lround(len / h)));
      for (int k = 1; k < n; ++k)
        right.push_back(rcuts[i] + len * k / n);
      right.push_back(rcuts[i + 1]);
    }
    m_right.assign(right.rbegin(), right.rend()); // from +L down to 0
  }

  double halfwidth() const { return m_L; }

  // Normalized Wronskian of the two decaying solutions at x = 0.
  double residual(double E) const {
    const double kappa = std::sqrt(-E);
    const State l = run(m_left, {1.0, kappa}, E);
    const State r = run(m_right, {1.0, -kappa}, E);
    const double w = l.u * r.du - l.du * r.u;
    return w / (std::hypot(l.u, l.du) * std::hypot(r.u, r.du));
  }

  // Number of eigenvalues below E: nodes of the left solution on (-L, L)
  // plus one more if it changes sign beyond +L.
  int count_below(double E) const {
    const double kappa = std::sqrt(-E);
    int nodes = 0;
    State s{1.0, kappa};
    s = run(m_left, s, E, &nodes);
    s = run(m_right_reversed(), s, E, &nodes);
    const double growing = s.du + kappa * s.u;
    if (growing * s.u < 0.0)
      ++nodes;
    return nodes;
  }

private:
  std::vector<double> m_right_reversed() const {
    return {m_right.rbegin(), m_right.rend()};
  }

  double V(double x) const { return m_p(x); }

  State run(const std::vector<double> &xs, State s, double E,
            int *nodes = nullptr) const {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double x0 = xs[i];
      const double h = xs[i + 1] - x0;
      // keep end-stage samples inside the step so that a jump sitting on a
      // step boundary is seen from the correct side
      const double nudge = 1e-9 * h;
      const double v0 = V(x0 + nudge) - E;
      const double vm = V(x0 + 0.5 * h) - E;
      const double v1 = V(x0 + h - nudge) - E;
      const double k1u = s.du, k1d = v0 * s.u;
      const double k2u = s.du + 0.5 * h * k1d;
      const double k2d = vm * (s.u + 0.5 * h * k1u);
      const double k3u = s.du + 0.5 * h * k2d;
      const double k3d = vm * (s.u + 0.5 * h * k2u);
      const double k4u = s.du + h * k3d;
      const double k4d = v1 * (s.u + h * k3u);
      const State next{s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
                       s.du + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)};
      if (nodes && s.u * next.u < 0.0)
        ++*nodes;
      s = next;
      const double mag = std::max(std::abs(s.u), std::abs(s.du));
      if (mag > 1e100) {
        s.u /= mag;
        s.du /= mag;
      }
    }
    return s;
  }

  const Potential &m_p;
  double m_L{0.0};
  std::vector<double> m_left;  // -L .. 0
  std::vector<double> m_right; // +L .. 0
};

double polish(const Shooter &sh, double lo, double hi, int &iterations) {
  auto f = [&](double E) { return sh.residual(E); };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0)
    return lo;
  if (fhi == 0.0)
    return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(ErrorCode::BracketFailure,
                "Wronskian has no sign change in the ground-state bracket");
  boost::uintmax_t it = max_iterations;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), it);
  iterations += static_cast<int>(it);
  if (it >= static_cast<boost::uintmax_t>(max_iterations))
    throw Error(ErrorCode::NoConvergence, "Wronskian root did not converge");
  return 0.5 * (r.first + r.second);
}

double erf_sq(double x) {
  const double e = std::erf(x);
  return e * e;
}

} // namespace

double exact_square_well(double s, double a) {
  if (!(s > 0.0) || !(a > 0.0))
    throw Error(ErrorCode::InvalidPotential,
                "square well needs positive depth and halfwidth");
  const double half_pi = 0.5 * std::numbers::pi / a;
  double lo = std::sqrt(std::max(0.0, s - half_pi * half_pi));
  double hi = std::sqrt(s);
  auto g = [&](double k) {
    const double q = std::sqrt(std::max(0.0, s - k * k));
    return q * std::tan(a * q) - k;
  };
  // g > 0 at lo, g < 0 at hi; bisect until the midpoint stops moving
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double k = 0.5 * (lo + hi);
  return -k * k;
}

double exact_poschl_teller(double s) {
  if (!(s > 0.0))
    throw Error(ErrorCode::InvalidPotential,
                "Poschl-Teller well needs positive depth");
  // (sqrt(1 + 4s) - 1) / 2 without cancellation at small s
  const double k = 2.0 * s / (1.0 + std::sqrt(1.0 + 4.0 * s));
  return -k * k;
}

double shooting_residual(const Potential &p, double E, int steps) {
  if (!(E < 0.0))
    throw Error(ErrorCode::BracketFailure, "trial energy must be negative");
  return Shooter(p, steps).residual(E);
}

BoundStateResult shooting_solve(const Potential &p, double tol) {
  if (!(tol >= 1e-12))
    throw Error(ErrorCode::NoConvergence,
                "tolerance " + std::to_string(tol) + " is below 1e-12");
  const double depth = p.strength() * p.peak_shape();
  if (!(depth > 0.0))
    throw Error(ErrorCode::BracketFailure, "potential has no attractive part");

  const Shooter fine(p, 2 * base_steps);
  const Shooter coarse(p, base_steps);

  BoundStateResult res;
  double lo = -depth;
  double hi = -1e-16 * depth;
  if (fine.count_below(lo) != 0)
    throw Error(ErrorCode::BracketFailure,
                "states found below the potential minimum");
  if (fine.count_below(hi) < 1)
    throw Error(ErrorCode::BracketFailure,
                "no bound state above E = " + std::to_string(hi) +
                    "; check the support radius");
  // shrink in log|E| until exactly the ground state lies in (lo, hi)
  while (fine.count_below(hi) > 1) {
    if (++res.iterations > max_iterations)
      throw Error(ErrorCode::NoConvergence, "node-count bisection");
    const double mid = -std::sqrt(lo * hi);
    (fine.count_below(mid) == 0 ? lo : hi) = mid;
  }
  res.E_lo = lo;
  res.E_hi = hi;

  res.energy = polish(fine, lo, hi, res.iterations);
  int unused = 0;
  const double e_coarse = polish(coarse, lo, hi, unused);
  res.step_error = std::abs(res.energy - e_coarse) / 15.0;
  res.residual = std::abs(fine.residual(res.energy));
  if (res.step_error > std::max(100.0 * tol, 1e-7 * std::abs(res.energy)))
    throw Error(ErrorCode::NoConvergence,
                "step-halving check failed: error estimate " +
                    std::to_string(res.step_error));
  return res;
}

double gaussian_F(double x) {
  using std::numbers::pi;
  const double e1 = std::erf(x);
  const double e2 = std::erf(std::numbers::sqrt2 * x);
  return std::pow(pi, 1.5) * std::exp(-2.0 * x * x) / 128.0 *
         (std::exp(x * x) * x * (2.0 * e1 - 1.0) *
              (4.0 * std::numbers::sqrt2 * x * e2 - std::sqrt(pi) * e1 * e1) -
          2.0 * e1 * e1);
}

double gaussian_G(double x) {
  using std::numbers::pi;
  using std::numbers::sqrt2;
  const double e1 = std::erf(x);
  const double e2 = std::erf(sqrt2 * x);
  const double g = std::exp(-x * x);
  const double pi32 = std::pow(pi, 1.5);
  return pi * pi * g * x * e1 * e1 * e1 / (64.0 * sqrt2) +
         pi * pi * g * x * e2 * e1 * e1 / (32.0 * sqrt2) +
         pi32 * std::exp(-3.0 * x * x) * erf_sq(x) / 64.0 +
         pi32 * std::exp(-2.0 * x * x) * erf_sq(x) / (64.0 * sqrt2) -
         pi32 * g * x * x * e2 * e1 / 16.0 -
         pi32 * g * x * x * e2 * e2 / 16.0;
}

GaussianClosedCoefficients gaussian_closed_coefficients() {
  using std::numbers::pi;
  const double sqrt3 = std::numbers::sqrt3;
  const double sqrt2 = std::numbers::sqrt2;
  const QuadratureGrid g = build_grid(10.0, 64, 16);
  GridFunction f(g.size()), h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    f[i] = gaussian_F(g.nodes[i]);
    h[i] = gaussian_G(g.nodes[i]);
  }
  GaussianClosedCoefficients c;
  c.integral_F = integrate(g, f);
  c.integral_G = integrate(g, h);
  c.c4 = -(pi / 8.0 + sqrt3 * pi / 8.0 + pi * pi / 12.0);
  c.c5 = 7.0 * pi / 96.0 + std::sqrt(1.5) * pi / 8.0 +
         3.0 * pi * pi / (8.0 * sqrt2) + c.integral_F;
  c.c6 = -3.0 * pi / 64.0 - 7.0 * pi / (96.0 * sqrt2) -
         7.0 * pi / (96.0 * std::sqrt(5.0)) - 5.0 * pi * pi / 16.0 -
         pi * pi / (64.0 * sqrt3) - 7.0 * sqrt3 * pi * pi / 64.0 -
         2.0 * pi * pi * pi / 45.0 + c.integral_G;
  return c;
}

} // namespace shallowwell

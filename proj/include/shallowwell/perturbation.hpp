#pragma once

#include "shallowwell/cluster_term.hpp"
#include "shallowwell/potential.hpp"
#include "shallowwell/quadrature.hpp"

#include <array>
#include <initializer_list>
#include <span>
#include <string>

namespace shallowwell {

/// mu_k = integral V(x) x^k dx, 0 <= k <= 4.
double moment(const Potential &p, const QuadratureGrid &g, int k);

/// integral V(x_1)|x_1-x_2|^{k_1} V(x_2) ... V(x_{m+1}) over m+1 sites,
/// evaluated by m kernel contractions and one final integration.
/// Throws UnsupportedChain unless 1 <= m <= 4 and every k_i <= 3.
double chain(const Potential &p, const QuadratureGrid &g,
             std::span<const int> powers);
double chain(const Potential &p, const QuadratureGrid &g,
             std::initializer_list<int> powers);

/// coefficient times the product of the term's moment and chain components.
double evaluate_term(const ClusterTerm &t, const Potential &p,
                     const QuadratureGrid &g);

/// Sum of a term table, terms evaluated concurrently and summed in order.
double evaluate_table(const TermTable &table, const Potential &p,
                      const QuadratureGrid &g);

double e2(const Potential &p, const QuadratureGrid &g);
double e3(const Potential &p, const QuadratureGrid &g);
double e4(const Potential &p, const QuadratureGrid &g);
double e5(const Potential &p, const QuadratureGrid &g);
double e6(const Potential &p, const QuadratureGrid &g);

/// E^(n) for n in [1, 6]; E^(1) of the unregulated well vanishes.
double correction(int n, const Potential &p, const QuadratureGrid &g);

/// E(s) ~ sum_n c_n s^n for one potential shape.
struct EnergySeries {
  int order{0};
  std::array<double, 7> coefficients{};  // index n holds c_n; c_0 = c_1 = 0
  std::array<double, 7> error_estimate{}; // |c_n(P) - c_n(2P)|
  std::string shape;
  double grid_halfwidth{0.0};
  int grid_panels{0};
  int grid_nodes_per_panel{0};

  double coefficient(int n) const { return coefficients.at(n); }
  /// Truncated series at strength s.
  double evaluate(double s) const;
};

/// Coefficients c_2 ... c_order of the unit-strength shape of p, with error
/// estimates from the grid g and refine(g). Throws UnsupportedChain unless
/// 2 <= order <= 6.
EnergySeries energy_series(const Potential &p, int order,
                           const QuadratureGrid &g);

} // namespace shallowwell

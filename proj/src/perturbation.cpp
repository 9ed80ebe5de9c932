#include "shallowwell/perturbation.hpp"

#include "shallowwell/error.hpp"
#include "summation.hpp"

#include <cmath>
#include <vector>

namespace shallowwell {

double moment(const Potential &p, const QuadratureGrid &g, int k) {
  if (k < 0 || k > 4)
    throw Error(ErrorCode::UnsupportedChain,
                "moment power " + std::to_string(k) + " outside [0, 4]");
  GridFunction f = sample(g, p);
  for (std::size_t i = 0; i < g.size(); ++i)
    f[i] *= std::pow(g.nodes[i], k);
  return integrate(g, f);
}

double chain(const Potential &p, const QuadratureGrid &g,
             std::span<const int> powers) {
  if (powers.empty() || powers.size() > 4)
    throw Error(ErrorCode::UnsupportedChain,
                "chain of " + std::to_string(powers.size()) + " links");
  for (int k : powers)
    if (k < 0 || k > 3)
      throw Error(ErrorCode::UnsupportedChain,
                  "link power " + std::to_string(k));
  GridFunction f(g.size(), 1.0);
  for (int k : powers)
    f = contract(g, p, k, 0, f);
  const GridFunction v = sample(g, p);
  for (std::size_t i = 0; i < g.size(); ++i)
    f[i] *= v[i];
  return integrate(g, f);
}

double chain(const Potential &p, const QuadratureGrid &g,
             std::initializer_list<int> powers) {
  return chain(p, g, std::span<const int>(powers.begin(), powers.size()));
}

double evaluate_term(const ClusterTerm &t, const Potential &p,
                     const QuadratureGrid &g) {
  return evaluate_graph(t.to_graph(), g, sample(g, p));
}

double evaluate_table(const TermTable &table, const Potential &p,
                      const QuadratureGrid &g) {
  const GridFunction v = sample(g, p);
  const auto n = static_cast<long>(table.terms.size());
  std::vector<double> values(table.terms.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    values[i] = evaluate_graph(table.terms[i].to_graph(), g, v);
  detail::NeumaierSum sum;
  for (double x : values)
    sum += x;
  return sum.value();
}

double e2(const Potential &p, const QuadratureGrid &g) {
  const double mu0 = moment(p, g, 0);
  return -0.25 * mu0 * mu0;
}

double e3(const Potential &p, const QuadratureGrid &g) {
  return -0.25 * moment(p, g, 0) * chain(p, g, {1});
}

double e4(const Potential &p, const QuadratureGrid &g) {
  const double mu0 = moment(p, g, 0);
  const double c1 = chain(p, g, {1});
  detail::NeumaierSum sum;
  sum += -mu0 * mu0 * chain(p, g, {2}) / 16.0;
  sum += -mu0 * chain(p, g, {1, 1}) / 8.0;
  sum += -c1 * c1 / 16.0;
  return sum.value();
}

double e5(const Potential &p, const QuadratureGrid &g) {
  const double mu0 = moment(p, g, 0);
  const double c1 = chain(p, g, {1});
  detail::NeumaierSum sum;
  sum += -mu0 * mu0 * mu0 * chain(p, g, {3}) / 96.0;
  sum += -mu0 * mu0 * chain(p, g, {1, 2}) / 16.0;
  sum += -mu0 * chain(p, g, {1, 1, 1}) / 16.0;
  sum += -mu0 * c1 * chain(p, g, {2}) / 16.0;
  sum += -c1 * chain(p, g, {1, 1}) / 16.0;
  return sum.value();
}

double e6(const Potential &p, const QuadratureGrid &g) {
  return evaluate_table(term_table(6), p, g);
}

double correction(int n, const Potential &p, const QuadratureGrid &g) {
  switch (n) {
  case 1:
    return 0.0;
  case 2:
    return e2(p, g);
  case 3:
    return e3(p, g);
  case 4:
    return e4(p, g);
  case 5:
    return e5(p, g);
  case 6:
    return e6(p, g);
  default:
    throw Error(ErrorCode::UnsupportedChain,
                "no correction of order " + std::to_string(n));
  }
}

double EnergySeries::evaluate(double s) const {
  double r = 0.0;
  for (int n = order; n >= 1; --n)
    r = (r + coefficients[n]) * s;
  return r;
}

EnergySeries energy_series(const Potential &p, int order,
                           const QuadratureGrid &g) {
  if (order < 2 || order > 6)
    throw Error(ErrorCode::UnsupportedChain,
                "series order " + std::to_string(order) + " outside [2, 6]");
  const Potential unit = p.with_strength(1.0);
  const QuadratureGrid fine = refine(g);
  EnergySeries es;
  es.order = order;
  es.shape = unit.describe();
  es.grid_halfwidth = g.halfwidth;
  es.grid_panels = g.panels;
  es.grid_nodes_per_panel = g.nodes_per_panel;
  for (int n = 2; n <= order; ++n) {
    es.coefficients[n] = correction(n, unit, g);
    es.error_estimate[n] = std::abs(es.coefficients[n] - correction(n, unit, fine));
  }
  return es;
}

} // namespace shallowwell

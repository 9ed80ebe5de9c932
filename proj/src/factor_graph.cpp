#include "shallowwell/factor_graph.hpp"

#include "shallowwell/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace shallowwell {

namespace {

double site_factor(const GraphSite &s, double x) {
  double r = 1.0;
  for (int i = 0; i < s.power; ++i)
    r *= x;
  switch (s.extra) {
  case SiteExtra::None:
    break;
  case SiteExtra::Abs:
    r *= std::abs(x);
    break;
  case SiteExtra::Sign:
    r *= (x > 0.0) - (x < 0.0);
    break;
  }
  return r;
}

const GraphLink *find_link(const FactorGraphTerm &t, int a, int b) {
  for (const auto &l : t.links)
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a))
      return &l;
  return nullptr;
}

} // namespace

std::vector<std::vector<int>> path_components(const FactorGraphTerm &term) {
  const int n = static_cast<int>(term.sites.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto &l : term.links) {
    if (l.a < 0 || l.b < 0 || l.a >= n || l.b >= n || l.a == l.b)
      throw Error(ErrorCode::NonPathComponent,
                  "link endpoint is not a valid distinct site");
    if (find_link(term, l.a, l.b) != &l)
      throw Error(ErrorCode::NonPathComponent, "duplicate link");
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    // collect the component
    std::vector<int> members{s};
    seen[s] = true;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int nb : adj[members[i]])
        if (!seen[nb]) {
          seen[nb] = true;
          members.push_back(nb);
        }
    std::size_t edge_count = 0;
    int start = n;
    for (int m : members) {
      if (adj[m].size() > 2)
        throw Error(ErrorCode::NonPathComponent,
                    "site " + std::to_string(m + 1) + " has three links");
      edge_count += adj[m].size();
      if (adj[m].size() <= 1)
        start = std::min(start, m);
    }
    if (start == n || edge_count / 2 != members.size() - 1)
      throw Error(ErrorCode::NonPathComponent, "links form a cycle");
    // walk from the lowest-numbered endpoint
    std::vector<int> path{start};
    int prev = -1;
    int cur = start;
    while (path.size() < members.size()) {
      const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    comps.push_back(std::move(path));
  }
  return comps;
}

double evaluate_graph(const FactorGraphTerm &term, const QuadratureGrid &g,
                      std::span<const double> measure) {
  if (measure.size() != g.size())
    throw Error(ErrorCode::LengthMismatch, "site measure length");
  for (const auto &l : term.links)
    if (l.power < 0 || l.power > 3)
      throw Error(ErrorCode::UnsupportedChain,
                  "link power " + std::to_string(l.power));

  const std::size_t n = g.size();
  auto weighted = [&](int site, std::span<const double> f) {
    GridFunction u(n);
    for (std::size_t i = 0; i < n; ++i)
      u[i] = measure[i] * site_factor(term.sites[site], g.nodes[i]) * f[i];
    return u;
  };

  double value = term.coefficient;
  const GridFunction ones(n, 1.0);
  for (const auto &path : path_components(term)) {
    GridFunction f = ones;
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
      const GraphLink &l = *find_link(term, path[step], path[step + 1]);
      GridFunction u = weighted(path[step], f);
      if (l.plus)
        u = reflect(g, u);
      f = apply_abs_kernel(g, l.power, u);
    }
    value *= integrate(g, weighted(path.back(), f));
    if (value == 0.0)
      break;
  }
  return value;
}

} // namespace shallowwell

#pragma once

#include "shallowwell/quadrature.hpp"

#include <span>
#include <vector>

namespace shallowwell {

/// Extra non-polynomial factor attached to a site.
enum class SiteExtra { None, Abs, Sign };

struct GraphSite {
  int power{0};
  SiteExtra extra{SiteExtra::None};
};

/// |x_a - x_b|^power, or |x_a + x_b|^power when `plus` is set. Sites are
/// 0-based.
struct GraphLink {
  int a{0};
  int b{0};
  int power{1};
  bool plus{false};
};

/// coefficient * integral prod_i [mu(x_i) site_i(x_i)] prod_links |...|
/// over all sites, where mu is the site measure (the potential, or a
/// regulated version of it) sampled on the grid.
struct FactorGraphTerm {
  double coefficient{1.0};
  std::vector<GraphSite> sites;
  std::vector<GraphLink> links;
};

/// Factorizes the term into connected components. A component without links
/// is a single-site moment; a linked component must be a simple path and is
/// evaluated by successive kernel applications from one end to the other.
/// Throws NonPathComponent for cycles or branching, UnsupportedChain for link
/// powers outside [0, 3]. Plus-links need a mirror-symmetric grid (every grid
/// from build_grid is).
double evaluate_graph(const FactorGraphTerm &term, const QuadratureGrid &g,
                      std::span<const double> measure);

/// Components of the term's link graph, as lists of site indices. Linked
/// components are returned in path order.
std::vector<std::vector<int>> path_components(const FactorGraphTerm &term);

} // namespace shallowwell

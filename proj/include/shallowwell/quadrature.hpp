#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shallowwell {

class Potential;

using GridFunction = std::vector<double>;

/// Composite Gauss-Legendre rule on [-L, L].
///
/// The domain is cut into `panels` equal panels; any requested breakpoints
/// (mirrored to keep the grid symmetric) split the panel they fall into.
/// Nodes are stored panel by panel in increasing order, so node i belongs to
/// panel i / nodes_per_panel.
///
/// Alongside the plain weights the grid keeps product-integration weights for
/// the odd kernels |x_i - y| and |x_i - y|^3 on the panel that contains x_i:
/// there the kernel has a kink and the Gauss rule would lose its order.
struct QuadratureGrid {
  double halfwidth{0.0};
  int panels{0}; // requested uniform panel count (before breakpoint splits)
  int nodes_per_panel{0};
  std::vector<double> breakpoints;
  std::vector<double> edges;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> own_panel_k1; // size() * nodes_per_panel
  std::vector<double> own_panel_k3;

  std::size_t size() const { return nodes.size(); }
  int panel_count() const { return static_cast<int>(edges.size()) - 1; }
  std::size_t mirror(std::size_t i) const { return nodes.size() - 1 - i; }
  bool has_edge_at(double x) const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int q, std::vector<double> &nodes,
                    std::vector<double> &weights);

/// Throws InvalidGridSpec unless L > 0, P >= 1 and 1 <= q <= 16.
QuadratureGrid build_grid(double L, int P, int q,
                          std::span<const double> breakpoints = {});

/// Same domain and breakpoints with twice the panels.
QuadratureGrid refine(const QuadratureGrid &g);

/// L = support radius + 5, P = 128, q = 8, panel edges at the potential's
/// breakpoints.
QuadratureGrid default_grid(const Potential &p, int P = 128, int q = 8);
QuadratureGrid default_grid(std::span<const Potential> ps, int P = 128,
                            int q = 8);

/// sum_i w_i f_i (compensated). Throws LengthMismatch.
double integrate(const QuadratureGrid &g, std::span<const double> f);

/// V at the grid nodes.
GridFunction sample(const QuadratureGrid &g, const Potential &p);

/// f evaluated at the mirrored nodes, f'(x_i) = f(-x_i).
GridFunction reflect(const QuadratureGrid &g, std::span<const double> f);

/// h_i = integral |x_i - y|^k u(y) dy on the grid, u given at the nodes.
/// k must lie in [0, 3]. Rows are computed in parallel.
GridFunction apply_abs_kernel(const QuadratureGrid &g, int k,
                              std::span<const double> u);

/// One link of a chain integral:
///   h_i = sum_j W^(k)_ij x_j^m V(x_j) f_j
/// where W^(k)_ij = w_j |x_i - x_j|^k, except on the panel holding x_i for
/// odd k, where W^(k) are the product-integration weights.
GridFunction contract(const QuadratureGrid &g, const Potential &p, int k,
                      int m, std::span<const double> f);

/// Serial dense implementations kept as references for the parallel kernels.
namespace reference {

/// Row-major N x N matrix W^(k) of the kernel used by contract().
std::vector<double> kernel_matrix(const QuadratureGrid &g, int k);

GridFunction apply_abs_kernel(const QuadratureGrid &g, int k,
                              std::span<const double> u);

GridFunction contract(const QuadratureGrid &g, const Potential &p, int k,
                      int m, std::span<const double> f);

} // namespace reference

} // namespace shallowwell

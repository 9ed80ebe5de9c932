#include "shallowwell/quadrature.hpp"

#include "shallowwell/error.hpp"
#include "shallowwell/potential.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace shallowwell {

namespace {

constexpr int max_nodes_per_panel = 16;

void check_length(const QuadratureGrid &g, std::size_t n) {
  if (n != g.size())
    throw Error(ErrorCode::LengthMismatch,
                "grid function has " + std::to_string(n) +
                    " values, grid has " + std::to_string(g.size()));
}

void check_kernel_power(int k) {
  if (k < 0 || k > 3)
    throw Error(ErrorCode::UnsupportedChain,
                "kernel power " + std::to_string(k) + " outside [0, 3]");
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i)
    r *= x;
  return r;
}

// Lagrange basis polynomial j through `ts`, evaluated at t.
double lagrange(std::span<const double> ts, std::size_t j, double t) {
  double r = 1.0;
  for (std::size_t m = 0; m < ts.size(); ++m)
    if (m != j)
      r *= (t - ts[m]) / (ts[j] - ts[m]);
  return r;
}

// W_ij = int_a^b |x_i - y|^k l_j(y) dy for every node i of the panel.
void fill_product_weights(QuadratureGrid &g, int k,
                          std::vector<double> &out) {
  const int q = g.nodes_per_panel;
  out.assign(g.size() * static_cast<std::size_t>(q), 0.0);
  std::vector<double> t, w;
  gauss_legendre(q + 2, t, w);
  std::vector<double> local(static_cast<std::size_t>(q));
  for (int p = 0; p < g.panel_count(); ++p) {
    const double a = g.edges[p];
    const double b = g.edges[p + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::size_t first = static_cast<std::size_t>(p) * q;
    for (int j = 0; j < q; ++j)
      local[j] = (g.nodes[first + j] - mid) / half;
    for (int ii = 0; ii < q; ++ii) {
      const double xi = g.nodes[first + ii];
      double *row = &out[(first + ii) * q];
      for (const auto &[lo, hi] : {std::pair{a, xi}, std::pair{xi, b}}) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        for (std::size_t r = 0; r < t.size(); ++r) {
          const double y = c + h * t[r];
          const double kernel = ipow(std::abs(xi - y), k) * w[r] * h;
          const double ty = (y - mid) / half;
          for (int j = 0; j < q; ++j)
            row[j] += kernel * lagrange(local, j, ty);
        }
      }
    }
  }
}

const std::vector<double> *own_panel_table(const QuadratureGrid &g, int k) {
  if (k == 1)
    return &g.own_panel_k1;
  if (k == 3)
    return &g.own_panel_k3;
  return nullptr;
}

// One row of the kernel applied to u; shared by the parallel and dense paths.
double kernel_row(const QuadratureGrid &g, int k, std::size_t i,
                  std::span<const double> u) {
  const std::size_t q = static_cast<std::size_t>(g.nodes_per_panel);
  const std::size_t own_first = (i / q) * q;
  const auto *own = own_panel_table(g, k);
  const double xi = g.nodes[i];
  detail::NeumaierSum acc;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (own != nullptr && j >= own_first && j < own_first + q) {
      acc += (*own)[i * q + (j - own_first)] * u[j];
    } else {
      acc += g.weights[j] * ipow(std::abs(xi - g.nodes[j]), k) * u[j];
    }
  }
  return acc.value();
}

GridFunction link_input(const QuadratureGrid &g, const Potential &p, int m,
                        std::span<const double> f) {
  check_length(g, f.size());
  GridFunction u(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    u[j] = ipow(g.nodes[j], m) * p(g.nodes[j]) * f[j];
  return u;
}

} // namespace

bool QuadratureGrid::has_edge_at(double x) const {
  const double tol = 1e-12 * std::max(1.0, halfwidth);
  return std::any_of(edges.begin(), edges.end(),
                     [&](double e) { return std::abs(e - x) <= tol; });
}

void gauss_legendre(int q, std::vector<double> &nodes,
                    std::vector<double> &weights) {
  nodes.assign(static_cast<std::size_t>(q), 0.0);
  weights.assign(static_cast<std::size_t>(q), 0.0);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int n = 1; n <= q; ++n) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p2) / n;
      }
      dp = q * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
        break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0;
    double p1 = 0.0;
    for (int n = 1; n <= q; ++n) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p2) / n;
    }
    dp = q * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes[i] = -z;
    nodes[q - 1 - i] = z;
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
  if (q % 2 == 1)
    nodes[q / 2] = 0.0;
}

QuadratureGrid build_grid(double L, int P, int q,
                          std::span<const double> breakpoints) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw Error(ErrorCode::InvalidGridSpec, "halfwidth must be positive");
  if (P < 1)
    throw Error(ErrorCode::InvalidGridSpec, "need at least one panel");
  if (q < 1 || q > max_nodes_per_panel)
    throw Error(ErrorCode::InvalidGridSpec,
                "nodes per panel must lie in [1, 16]");

  QuadratureGrid g;
  g.halfwidth = L;
  g.panels = P;
  g.nodes_per_panel = q;

  const double tol = 1e-12 * L;
  for (double b : breakpoints) {
    for (double s : {b, -b}) {
      if (std::abs(s) < L - tol)
        g.breakpoints.push_back(s);
    }
  }
  std::sort(g.breakpoints.begin(), g.breakpoints.end());

  // left half computed, right half mirrored so the node set is exactly
  // symmetric
  g.edges.assign(static_cast<std::size_t>(P) + 1, 0.0);
  for (int p = 0; 2 * p < P; ++p) {
    const double e = -L + 2.0 * L * p / P;
    g.edges[p] = e;
    g.edges[P - p] = -e;
  }
  for (double b : g.breakpoints) {
    if (!g.has_edge_at(b))
      g.edges.push_back(b);
  }
  std::sort(g.edges.begin(), g.edges.end());

  std::vector<double> t, w;
  gauss_legendre(q, t, w);
  g.nodes.reserve(static_cast<std::size_t>(g.panel_count()) * q);
  g.weights.reserve(g.nodes.capacity());
  for (int p = 0; p < g.panel_count(); ++p) {
    const double a = g.edges[p];
    const double b = g.edges[p + 1];
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    for (int j = 0; j < q; ++j) {
      g.nodes.push_back(c + h * t[j]);
      g.weights.push_back(h * w[j]);
    }
  }
  fill_product_weights(g, 1, g.own_panel_k1);
  fill_product_weights(g, 3, g.own_panel_k3);
  return g;
}

QuadratureGrid refine(const QuadratureGrid &g) {
  return build_grid(g.halfwidth, 2 * g.panels, g.nodes_per_panel,
                    g.breakpoints);
}

QuadratureGrid default_grid(const Potential &p, int P, int q) {
  return default_grid(std::span<const Potential>(&p, 1), P, q);
}

QuadratureGrid default_grid(std::span<const Potential> ps, int P, int q) {
  double radius = 0.0;
  std::vector<double> bps;
  for (const auto &p : ps) {
    radius = std::max(radius, support_radius(p));
    const auto b = p.breakpoints();
    bps.insert(bps.end(), b.begin(), b.end());
  }
  return build_grid(radius + 5.0, P, q, bps);
}

double integrate(const QuadratureGrid &g, std::span<const double> f) {
  check_length(g, f.size());
  detail::NeumaierSum acc;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += g.weights[i] * f[i];
  return acc.value();
}

GridFunction sample(const QuadratureGrid &g, const Potential &p) {
  GridFunction v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = p(g.nodes[i]);
  return v;
}

GridFunction reflect(const QuadratureGrid &g, std::span<const double> f) {
  check_length(g, f.size());
  GridFunction r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    r[i] = f[g.mirror(i)];
  return r;
}

GridFunction apply_abs_kernel(const QuadratureGrid &g, int k,
                              std::span<const double> u) {
  check_kernel_power(k);
  check_length(g, u.size());
  GridFunction h(g.size());
  const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    h[i] = kernel_row(g, k, static_cast<std::size_t>(i), u);
  return h;
}

GridFunction contract(const QuadratureGrid &g, const Potential &p, int k,
                      int m, std::span<const double> f) {
  check_kernel_power(k);
  return apply_abs_kernel(g, k, link_input(g, p, m, f));
}

namespace reference {

std::vector<double> kernel_matrix(const QuadratureGrid &g, int k) {
  check_kernel_power(k);
  const std::size_t n = g.size();
  const std::size_t q = static_cast<std::size_t>(g.nodes_per_panel);
  const auto *own = own_panel_table(g, k);
  std::vector<double> mat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      mat[i * n + j] =
          g.weights[j] * std::pow(std::abs(g.nodes[i] - g.nodes[j]), k);
    if (own != nullptr) {
      const std::size_t first = (i / q) * q;
      for (std::size_t jj = 0; jj < q; ++jj)
        mat[i * n + first + jj] = (*own)[i * q + jj];
    }
  }
  return mat;
}

GridFunction apply_abs_kernel(const QuadratureGrid &g, int k,
                              std::span<const double> u) {
  check_length(g, u.size());
  const auto mat = kernel_matrix(g, k);
  const std::size_t n = g.size();
  GridFunction h(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += mat[i * n + j] * u[j];
    h[i] = acc;
  }
  return h;
}

GridFunction contract(const QuadratureGrid &g, const Potential &p, int k,
                      int m, std::span<const double> f) {
  return reference::apply_abs_kernel(g, k, link_input(g, p, m, f));
}

} // namespace reference

} // namespace shallowwell

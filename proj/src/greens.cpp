#include "shallowwell/greens.hpp"

#include "shallowwell/perturbation.hpp"
#include "shallowwell/polyfit.hpp"
#include "summation.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <string>

namespace shallowwell {

namespace {

using Real50 = boost::multiprecision::cpp_bin_float_50;

double greens0(double b, double x1, double x2) {
  const double a1 = std::abs(x1), a2 = std::abs(x2), d = std::abs(x1 - x2);
  return 1.0 / (4.0 * b) + 0.25 * (-a1 - 2.0 * d - a2);
}

double greens1(double b, double x1, double x2) {
  const double a1 = std::abs(x1), a2 = std::abs(x2);
  const double u = x1 - x2, d = std::abs(u);
  const double s1 = x1 * x1, s2 = x2 * x2;
  return 1.0 / (16.0 * b * b * b) - (a1 + a2) / (16.0 * b * b) +
         (2.0 * a1 * a2 - 3.0 * s1 + 8.0 * x1 * x2 - 3.0 * s2) / (32.0 * b) +
         (8.0 * d * u * u + 3.0 * a2 * (3.0 * s1 + s2) +
          3.0 * a1 * (s1 + 3.0 * s2)) /
             96.0;
}

double greens2(double b, double x1, double x2) {
  const double a1 = std::abs(x1), a2 = std::abs(x2);
  const double u = x1 - x2, d = std::abs(u);
  const double s1 = x1 * x1, s2 = x2 * x2;
  const double b2 = b * b, b3 = b2 * b;
  return 1.0 / (32.0 * b3 * b2) - (a1 + a2) / (32.0 * b2 * b2) -
         (-2.0 * a1 * a2 + s1 - 4.0 * x1 * x2 + s2) / (64.0 * b3) +
         ((a1 + 3.0 * a2) * s1 + (3.0 * a1 + a2) * s2) / (192.0 * b2) +
         (5.0 * s1 * s1 - 24.0 * s1 * x1 * x2 + 30.0 * s1 * s2 -
          24.0 * x1 * x2 * s2 + 5.0 * s2 * s2 - 4.0 * a1 * a2 * (s1 + s2)) /
             (768.0 * b) +
         (-16.0 * d * u * u * u * u -
          5.0 * a2 * (5.0 * s1 * s1 + 10.0 * s1 * s2 + s2 * s2) -
          5.0 * a1 * (s1 * s1 + 10.0 * s1 * s2 + 5.0 * s2 * s2)) /
             3840.0;
}

double greens3(double b, double x1, double x2) {
  const double a1 = std::abs(x1), a2 = std::abs(x2);
  const double u = x1 - x2, d = std::abs(u);
  const double s1 = x1 * x1, s2 = x2 * x2;
  const double p = x1 * x2;
  const double b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
  const double u2 = u * u;
  return 5.0 / (256.0 * b4 * b3) - 5.0 * (a1 + a2) / (256.0 * b3 * b3) +
         (10.0 * a1 * a2 - 3.0 * s1 + 16.0 * p - 3.0 * s2) / (512.0 * b4 * b) +
         ((a1 + 3.0 * a2) * s1 + (3.0 * a1 + a2) * s2) / (512.0 * b4) +
         (5.0 * s1 * s1 - 32.0 * s1 * p + 30.0 * s1 * s2 - 32.0 * p * s2 +
          5.0 * s2 * s2 - 12.0 * a1 * a2 * (s1 + s2)) /
             (6144.0 * b3) -
         ((a1 + 5.0 * a2) * s1 * s1 + 10.0 * (a1 + a2) * s1 * s2 +
          (5.0 * a1 + a2) * s2 * s2) /
             (6144.0 * b2) +
         (-7.0 * s1 * s1 * s1 + 48.0 * s1 * s1 * p - 105.0 * s1 * s1 * s2 +
          160.0 * s1 * p * s2 - 105.0 * s1 * s2 * s2 + 48.0 * p * s2 * s2 -
          7.0 * s2 * s2 * s2 +
          2.0 * std::abs(p) * (3.0 * s1 + s2) * (s1 + 3.0 * s2)) /
             (36864.0 * b) +
         (128.0 * d * u2 * u2 * u2 +
          35.0 * a2 *
              (7.0 * s1 * s1 * s1 + 35.0 * s1 * s1 * s2 + 21.0 * s1 * s2 * s2 +
               s2 * s2 * s2) +
          35.0 * a1 *
              (s1 * s1 * s1 + 21.0 * s1 * s1 * s2 + 35.0 * s1 * s2 * s2 +
               7.0 * s2 * s2 * s2)) /
             1290240.0;
}

// Four-site term builders (1-based site labels).
FactorGraphTerm four_sites(double c) {
  FactorGraphTerm t;
  t.coefficient = c;
  t.sites.assign(4, GraphSite{});
  return t;
}

GraphLink minus(int a, int b) { return {a - 1, b - 1, 1, false}; }
GraphLink plus(int a, int b) { return {a - 1, b - 1, 1, true}; }

// c * |x_i| * link
FactorGraphTerm abs_site(double c, int i, GraphLink l) {
  auto t = four_sites(c);
  t.sites[i - 1].extra = SiteExtra::Abs;
  t.links.push_back(l);
  return t;
}

// c * sign(x_i) * x_j * link
FactorGraphTerm sign_times(double c, int i, int j, GraphLink l) {
  auto t = four_sites(c);
  t.sites[i - 1].extra = SiteExtra::Sign;
  t.sites[j - 1].power = 1;
  t.links.push_back(l);
  return t;
}

FactorGraphTerm two_links(double c, GraphLink l1, GraphLink l2) {
  auto t = four_sites(c);
  t.links = {l1, l2};
  return t;
}

FactorGraphTerm monomial(double c, int i, int j) {
  auto t = four_sites(c);
  t.sites[i - 1].power += 1;
  t.sites[j - 1].power += 1;
  return t;
}

double sum_graphs(const std::vector<FactorGraphTerm> &terms,
                  const QuadratureGrid &g, const GridFunction &measure) {
  const auto n = static_cast<long>(terms.size());
  std::vector<double> values(terms.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    values[i] = evaluate_graph(terms[i], g, measure);
  detail::NeumaierSum s;
  for (double v : values)
    s += v;
  return s.value();
}

std::vector<std::array<int, 4>> permutations4() {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> p{0, 1, 2, 3};
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

} // namespace

double greens_closed(const GreensParams &params, double x1, double x2) {
  if (!(params.beta > 0.0))
    throw Error(ErrorCode::DegenerateShift, "beta must be positive");
  if (!(params.gamma > 0.0))
    throw Error(ErrorCode::DegenerateShift,
                "gamma must be positive (the closed form divides by gamma)");
  return detail::greens_closed(params.beta, params.gamma, x1, x2);
}

double greens_expansion(int l, double beta, double x1, double x2) {
  switch (l) {
  case 0:
    return greens0(beta, x1, x2);
  case 1:
    return greens1(beta, x1, x2);
  case 2:
    return greens2(beta, x1, x2);
  case 3:
    return greens3(beta, x1, x2);
  default:
    throw Error(ErrorCode::UnsupportedChain,
                "no Green's function expansion of order " + std::to_string(l));
  }
}

double greens_taylor_coefficient(int l, double beta, double x1, double x2) {
  if (l < 0 || l > 3)
    throw Error(ErrorCode::UnsupportedChain,
                "Taylor coefficient of order " + std::to_string(l));
  if (!(beta > 0.0))
    throw Error(ErrorCode::DegenerateShift, "beta must be positive");
  constexpr int n = 8;
  const Real50 b = beta;
  const Real50 h = Real50(1e-3) * b * b;
  const Real50 y1 = x1, y2 = x2;
  // Vandermonde system in t = gamma / h, solved by Gaussian elimination.
  std::array<std::array<Real50, n + 1>, n> m;
  const std::array<int, n> ts{-4, -3, -2, -1, 1, 2, 3, 4};
  for (int r = 0; r < n; ++r) {
    Real50 t = 1;
    for (int c = 0; c < n; ++c) {
      m[r][c] = t;
      t *= ts[r];
    }
    m[r][n] = detail::greens_closed(b, h * ts[r], y1, y2);
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[piv][c]))
        piv = r;
    std::swap(m[c], m[piv]);
    for (int r = c + 1; r < n; ++r) {
      const Real50 f = m[r][c] / m[c][c];
      for (int k = c; k <= n; ++k)
        m[r][k] -= f * m[c][k];
    }
  }
  std::array<Real50, n> a;
  for (int r = n - 1; r >= 0; --r) {
    Real50 s = m[r][n];
    for (int k = r + 1; k < n; ++k)
      s -= m[r][k] * a[k];
    a[r] = s / m[r][r];
  }
  // a_l / h^l is the l-th Taylor coefficient in gamma
  Real50 coeff = a[l];
  for (int i = 0; i < l; ++i)
    coeff /= h;
  if (l % 2 == 1)
    coeff = -coeff;
  return static_cast<double>(coeff);
}

std::vector<FactorGraphTerm> divergent_block_terms() {
  auto single = [](double c, GraphLink l) {
    auto t = four_sites(c);
    t.links = {l};
    return t;
  };
  return {single(1.0, minus(1, 2)), single(1.0, minus(2, 3)),
          single(-2.0, minus(3, 4))};
}

std::vector<FactorGraphTerm> polynomial_block_terms() {
  const double k = 1.0 / 64.0;
  return {monomial(-3 * k, 1, 1), monomial(6 * k, 2, 1),
          monomial(-8 * k, 2, 2), monomial(-1 * k, 3, 3),
          monomial(4 * k, 4, 4),  monomial(10 * k, 2, 3),
          monomial(-8 * k, 3, 4)};
}

std::vector<FactorGraphTerm> regular_block_terms() {
  const double c128 = 1.0 / 128.0, c64 = 1.0 / 64.0, c16 = 1.0 / 16.0;
  return {
      abs_site(-5 * c128, 1, minus(1, 2)),
      abs_site(-5 * c128, 2, minus(1, 2)),
      two_links(-c16, minus(2, 3), minus(1, 2)),
      abs_site(-c16, 3, minus(1, 2)),
      two_links(-c16, minus(3, 4), minus(1, 2)),
      abs_site(-c16, 4, minus(1, 2)),
      sign_times(c128, 1, 2, minus(1, 2)),
      sign_times(c128, 2, 1, minus(1, 2)),
      abs_site(-c128, 1, plus(1, 2)),
      abs_site(-c128, 2, plus(1, 2)),
      abs_site(-c16, 1, minus(2, 3)),
      abs_site(-5 * c128, 2, minus(2, 3)),
      abs_site(-5 * c128, 3, minus(2, 3)),
      abs_site(-c128, 2, plus(2, 3)),
      abs_site(-c128, 3, plus(2, 3)),
      abs_site(1.0 / 8.0, 1, minus(3, 4)),
      abs_site(1.0 / 8.0, 2, minus(3, 4)),
      two_links(-c16, minus(2, 3), minus(3, 4)),
      abs_site(5 * c64, 3, minus(3, 4)),
      abs_site(-c16, 4, minus(2, 3)),
      abs_site(5 * c64, 4, minus(3, 4)),
      abs_site(c64, 3, plus(3, 4)),
      abs_site(c64, 4, plus(3, 4)),
      sign_times(-c128, 1, 2, plus(1, 2)),
      sign_times(c128, 2, 3, minus(2, 3)),
      sign_times(-c128, 2, 3, plus(2, 3)),
      sign_times(-c64, 3, 4, minus(3, 4)),
      sign_times(c64, 3, 4, plus(3, 4)),
      sign_times(-c128, 2, 1, plus(1, 2)),
      sign_times(c128, 3, 2, minus(2, 3)),
      sign_times(-c128, 3, 2, plus(2, 3)),
      sign_times(-c64, 4, 3, minus(3, 4)),
      sign_times(c64, 4, 3, plus(3, 4)),
  };
}

GridFunction regulated_measure(const Potential &p, const QuadratureGrid &g,
                               double beta) {
  GridFunction w = sample(g, p);
  for (std::size_t i = 0; i < g.size(); ++i)
    w[i] *= std::exp(-beta * std::abs(g.nodes[i]));
  return w;
}

FourthOrderBlocks e4_finite_beta_blocks(const Potential &p,
                                        const QuadratureGrid &g, double beta) {
  if (!(beta > 0.0))
    throw Error(ErrorCode::DegenerateShift, "beta must be positive");
  if (!g.has_edge_at(0.0))
    throw Error(ErrorCode::InvalidGridSpec,
                "finite-beta blocks need a panel edge at x = 0");
  const GridFunction w = regulated_measure(p, g, beta);
  FourthOrderBlocks b;
  b.divergent = sum_graphs(divergent_block_terms(), g, w) / (32.0 * beta);
  b.polynomial = sum_graphs(polynomial_block_terms(), g, w);
  b.regular = sum_graphs(regular_block_terms(), g, w);
  return b;
}

double e4_finite_beta(const Potential &p, const QuadratureGrid &g,
                      double beta) {
  return e4_finite_beta_blocks(p, g, beta).total();
}

double symmetrized_divergent_kernel(const std::array<double, 4> &x) {
  detail::NeumaierSum s;
  for (const auto &pi : permutations4())
    s += std::abs(x[pi[0]] - x[pi[1]]) + std::abs(x[pi[1]] - x[pi[2]]) -
         2.0 * std::abs(x[pi[2]] - x[pi[3]]);
  return s.value() / 24.0;
}

SymmetrizedBlock symmetrized_divergent_block(const Potential &p,
                                             const QuadratureGrid &g,
                                             double beta) {
  const GridFunction w = regulated_measure(p, g, beta);
  std::vector<FactorGraphTerm> relabeled;
  for (const auto &pi : permutations4())
    for (auto t : divergent_block_terms()) {
      for (auto &l : t.links) {
        l.a = pi[l.a];
        l.b = pi[l.b];
      }
      relabeled.push_back(std::move(t));
    }
  const auto n = static_cast<long>(relabeled.size());
  std::vector<double> values(relabeled.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    values[i] = evaluate_graph(relabeled[i], g, w);
  detail::NeumaierSum value, scale;
  for (double v : values) {
    value += v;
    scale += std::abs(v);
  }
  return {value.value() / 24.0, scale.value() / 24.0};
}

ResidualFit e4_residual_fit(const Potential &p, const QuadratureGrid &g,
                            std::vector<double> betas) {
  ResidualFit fit;
  fit.e4 = e4(p, g);
  fit.betas = std::move(betas);
  for (double b : fit.betas)
    fit.residuals.push_back(e4_finite_beta(p, g, b) - fit.e4);
  const int degree = std::min<int>(2, static_cast<int>(fit.betas.size()) - 1);
  const auto c = polyfit(fit.betas, fit.residuals, degree);
  fit.intercept = c[0];
  fit.slope = degree >= 1 ? c[1] : 0.0;
  fit.curvature = degree >= 2 ? c[2] : 0.0;
  return fit;
}

} // namespace shallowwell

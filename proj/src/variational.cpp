#include "shallowwell/variational.hpp"

#include "shallowwell/error.hpp"
#include "summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace shallowwell {

namespace {

constexpr double log_decay = 70.0; // psi^2 >= e^-70 inside the norm grid
constexpr double log_bound = 18.0 * 2.302585092994046; // |log param| <= 18 decades

bool admissible(const TrialFamily &tf) {
  const bool a = std::isfinite(tf.alpha) && tf.alpha > 0.0 &&
                 std::isfinite(tf.amplitude) && tf.amplitude != 0.0;
  if (tf.kind == TrialKind::Gaussian)
    return a;
  return a && std::isfinite(tf.beta) && tf.beta >= 0.0;
}

// Half-extent beyond which psi^2 < e^-70.
double extent(const TrialFamily &tf) {
  const double r = 0.5 * log_decay / tf.alpha;
  if (tf.kind == TrialKind::Gaussian)
    return std::sqrt(r);
  return std::sqrt(r * (r + 2.0 * tf.beta));
}

// Plain composite Gauss-Legendre rule on [-X, X] for the norm and kinetic
// integrals; the kernel weights of build_grid are not needed here.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

Rule norm_rule(const TrialFamily &tf) {
  constexpr int panels = 32;
  constexpr int q = 16;
  static const auto gl = [] {
    std::pair<std::vector<double>, std::vector<double>> r;
    gauss_legendre(q, r.first, r.second);
    return r;
  }();
  const double X = extent(tf);
  std::vector<double> edges;
  for (int i = 0; i <= panels; ++i)
    edges.push_back(-X + 2.0 * X * i / panels);
  if (tf.kind == TrialKind::ExpSqrt && tf.beta > 0.0)
    for (double b = tf.beta; b < X; b *= 2.0)
      if (b > X * 1e-6) {
        edges.push_back(b);
        edges.push_back(-b);
      }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Rule r;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (int j = 0; j < q; ++j) {
      r.x.push_back(c + h * gl.first[j]);
      r.w.push_back(h * gl.second[j]);
    }
  }
  return r;
}

struct NelderMead {
  std::vector<double> x;
  double f{0.0};
  int evaluations{0};
  bool converged{false};
};

template <class F>
NelderMead nelder_mead(F &&f, std::vector<double> x0, double step) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> s(n + 1, x0);
  std::vector<double> fs(n + 1);
  NelderMead out;
  auto eval = [&](const std::vector<double> &x) {
    ++out.evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i)
    s[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i)
    fs[i] = eval(s[i]);

  constexpr int max_iter = 2000;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](auto a, auto b) { return fs[a] < fs[b]; });
    {
      auto s2 = s;
      auto f2 = fs;
      for (std::size_t i = 0; i <= n; ++i) {
        s[i] = s2[idx[i]];
        fs[i] = f2[idx[i]];
      }
    }
    double size = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        size = std::max(size, std::abs(s[i][k] - s[0][k]));
    const double spread = std::abs(fs[n] - fs[0]);
    if (size < 1e-9 && spread <= 1e-14 * std::max(1.0, std::abs(fs[0]))) {
      out.converged = true;
      break;
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        c[k] += s[i][k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> y(n);
      for (std::size_t k = 0; k < n; ++k)
        y[k] = c[k] + t * (s[n][k] - c[k]);
      return y;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        s[n] = xe;
        fs[n] = fe;
      } else {
        s[n] = xr;
        fs[n] = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      s[n] = xr;
      fs[n] = fr;
      continue;
    }
    const bool outside = fr < fs[n];
    const auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fs[n])) {
      s[n] = xc;
      fs[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k)
        s[i][k] = s[0][k] + 0.5 * (s[i][k] - s[0][k]);
      fs[i] = eval(s[i]);
    }
  }
  const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
  out.x = s[best];
  out.f = fs[best];
  return out;
}

} // namespace

double TrialFamily::psi(double x) const {
  if (kind == TrialKind::Gaussian)
    return amplitude * std::exp(-alpha * x * x);
  // sqrt(beta^2 + x^2) - beta, written without cancellation
  const double r = std::hypot(beta, x);
  return amplitude * std::exp(-alpha * x * x / (r + beta));
}

double TrialFamily::dpsi(double x) const {
  if (kind == TrialKind::Gaussian)
    return -2.0 * alpha * x * psi(x);
  const double r = std::hypot(beta, x);
  return r == 0.0 ? 0.0 : -alpha * x / r * psi(x);
}

double rayleigh_quotient(const TrialFamily &tf, const Potential &p,
                         const QuadratureGrid &g) {
  if (!admissible(tf))
    throw Error(ErrorCode::NonNormalizable, "trial parameters out of range");
  const Rule ng = norm_rule(tf);
  detail::NeumaierSum norm_sum, kinetic_sum;
  for (std::size_t i = 0; i < ng.x.size(); ++i) {
    const double u = tf.psi(ng.x[i]);
    const double du = tf.dpsi(ng.x[i]);
    norm_sum += ng.w[i] * u * u;
    kinetic_sum += ng.w[i] * du * du;
  }
  const double norm = norm_sum.value();
  if (!std::isfinite(norm) || !(norm > std::numeric_limits<double>::min()))
    throw Error(ErrorCode::NonNormalizable,
                "<psi|psi> is not a positive finite number");
  GridFunction v = sample(g, p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = tf.psi(g.nodes[i]);
    v[i] *= u * u;
  }
  return (kinetic_sum.value() + integrate(g, v)) / norm;
}

VariationalResult minimize(TrialKind kind, const Potential &p,
                           const QuadratureGrid &g) {
  const std::array<double, 4> alphas{0.05, 0.2, 1.0, 5.0};
  const std::array<double, 3> betas{0.2, 1.0, 5.0};
  std::vector<std::vector<double>> starts;
  for (double a : alphas) {
    if (kind == TrialKind::Gaussian)
      starts.push_back({std::log(a)});
    else
      for (double b : betas)
        starts.push_back({std::log(a), std::log(b)});
  }
  auto family = [kind](const std::vector<double> &y) {
    TrialFamily tf;
    tf.kind = kind;
    tf.alpha = std::exp(std::clamp(y[0], -log_bound, log_bound));
    if (kind == TrialKind::ExpSqrt)
      tf.beta = std::exp(std::clamp(y[1], -log_bound, log_bound));
    return tf;
  };
  auto objective = [&](const std::vector<double> &y) {
    try {
      return rayleigh_quotient(family(y), p, g);
    } catch (const Error &) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const auto n = static_cast<long>(starts.size());
  std::vector<NelderMead> runs(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i)
    runs[i] = nelder_mead(objective, starts[i], 0.5);

  VariationalResult best;
  best.energy = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (const auto &r : runs) {
    best.evaluations += r.evaluations;
    any_converged = any_converged || r.converged;
    const TrialFamily tf = family(r.x);
    const bool better =
        r.f < best.energy ||
        (r.f == best.energy &&
         std::pair(tf.alpha, tf.beta) <
             std::pair(best.family.alpha, best.family.beta));
    if (better) {
      best.energy = r.f;
      best.family = tf;
    }
  }
  if (!any_converged || !std::isfinite(best.energy))
    throw Error(ErrorCode::OptimizerStalled,
                "no Nelder-Mead restart converged");
  return best;
}

} // namespace shallowwell

#include "shallowwell/cli.hpp"

#include "shallowwell/error.hpp"
#include "shallowwell/greens.hpp"
#include "shallowwell/oracles.hpp"
#include "shallowwell/perturbation.hpp"
#include "shallowwell/rational.hpp"
#include "shallowwell/resummation.hpp"
#include "shallowwell/variational.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace shallowwell::cli {

namespace {

constexpr const char *unit_coeff = "energy/strength^n";

std::vector<std::pair<std::string, std::string>>
common_meta(const std::string &command, const Potential &p,
            const QuadratureGrid &g) {
  return {{"command", command},
          {"potential", p.describe()},
          {"grid_L", format_number(g.halfwidth)},
          {"grid_P", std::to_string(g.panels)},
          {"grid_q", std::to_string(g.nodes_per_panel)},
          {"grid_nodes", std::to_string(g.size())}};
}

// Exact series coefficient c_n where a closed form exists.
std::optional<Rational> exact_rational(const Potential &p, int n) {
  if (p.kind() == PotentialKind::SquareWell && p.halfwidth() == 1.0) {
    static const std::array<Rational, 7> sw{
        Rational(0), Rational(0), Rational(-1), Rational(4, 3),
        Rational(-92, 45), Rational(1072, 315), Rational(-84752, 14175)};
    return sw[n];
  }
  if (p.kind() == PotentialKind::PoschlTeller) {
    static const std::array<Rational, 7> pt{
        Rational(0), Rational(0), Rational(-1), Rational(2),
        Rational(-5), Rational(14), Rational(-42)};
    return pt[n];
  }
  return std::nullopt;
}

std::optional<double> exact_value(const Potential &p, int n) {
  if (auto r = exact_rational(p, n))
    return r->value();
  if (p.kind() == PotentialKind::SquareWell) {
    // c_n scales as a^(2n - 2) with the halfwidth
    const auto r = exact_rational(Potential::square_well(1.0, 1.0), n);
    return r->value() * std::pow(p.halfwidth(), 2 * n - 2);
  }
  return std::nullopt;
}

std::optional<double> exact_energy(const Potential &p) {
  if (p.strength() <= 0.0)
    return std::nullopt;
  if (p.kind() == PotentialKind::SquareWell)
    return exact_square_well(p.strength(), p.halfwidth());
  if (p.kind() == PotentialKind::PoschlTeller)
    return exact_poschl_teller(p.strength());
  return std::nullopt;
}

std::vector<double> sweep(const RunConfig &cfg) {
  std::vector<double> s(static_cast<std::size_t>(cfg.steps));
  for (int i = 0; i < cfg.steps; ++i)
    s[i] = cfg.s_min + (cfg.s_max - cfg.s_min) * i / (cfg.steps - 1);
  return s;
}

double depth_of(const RunConfig &cfg, const Potential &unit) {
  return cfg.depth ? *cfg.depth : unit.shape(0.0);
}

Cell num(double v) { return Cell{v}; }
Cell integer(long v) { return Cell{v}; }
Cell text(std::string v) { return Cell{std::move(v)}; }

} // namespace

Report cmd_series(const RunConfig &cfg) {
  const Potential p = make_potential(cfg);
  const QuadratureGrid g = make_grid(cfg, p);
  const EnergySeries es = energy_series(p, cfg.order, g);

  Report r;
  r.command = "series";
  r.meta = common_meta("series", p.with_strength(1.0), g);
  r.meta.emplace_back("order", std::to_string(cfg.order));
  Table t;
  t.name = "series";
  t.columns = {"n [-]", std::string("c_n [") + unit_coeff + "]",
               std::string("error_estimate [") + unit_coeff + "]",
               std::string("exact [") + unit_coeff + "]",
               std::string("exact_fraction [") + unit_coeff + "]"};
  for (int n = 1; n <= cfg.order; ++n) {
    std::vector<Cell> row{integer(n), num(es.coefficients[n]),
                          num(es.error_estimate[n]), std::nullopt,
                          std::nullopt};
    if (auto v = exact_value(p, n))
      row[3] = num(*v);
    if (auto q = exact_rational(p, n))
      row[4] = text(q->to_string());
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_compare(const RunConfig &cfg) {
  const Potential shape = make_potential(cfg).with_strength(1.0);
  const QuadratureGrid g = make_grid(cfg, shape);
  const EnergySeries es = energy_series(shape, cfg.order, g);
  std::optional<PadeApproximant> pa;
  std::string pade_reason;
  try {
    pa = pade_with_asymptote(es, depth_of(cfg, shape), cfg.pade_m, cfg.pade_n);
  } catch (const Error &e) {
    pade_reason = e.what();
  }

  const std::vector<double> ss = sweep(cfg);
  const auto n = static_cast<long>(ss.size());
  std::vector<std::vector<Cell>> rows(ss.size());
  std::vector<bool> complete(ss.size(), false);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const double s = ss[i];
    const Potential p = shape.with_strength(s);
    std::vector<Cell> row(7);
    std::string reason;
    auto attempt = [&](std::size_t col, const char *what, auto &&fn) {
      try {
        row[col] = num(fn());
      } catch (const Error &e) {
        reason += std::string(reason.empty() ? "" : "; ") + what + ": " +
                  e.what();
      }
    };
    row[0] = num(s);
    attempt(1, "series", [&] { return es.evaluate(s); });
    if (pa)
      attempt(2, "pade", [&] { return evaluate_pade(*pa, s); });
    else
      reason += std::string(reason.empty() ? "" : "; ") + "pade: " + pade_reason;
    attempt(3, "var_gaussian",
            [&] { return minimize(TrialKind::Gaussian, p, g).energy; });
    attempt(4, "var_expsqrt",
            [&] { return minimize(TrialKind::ExpSqrt, p, g).energy; });
    attempt(5, "shooting", [&] { return shooting_solve(p, cfg.tol).energy; });
    complete[i] = reason.empty();
    row[6] = text(reason);
    rows[i] = std::move(row);
  }

  Report r;
  r.command = "compare";
  r.meta = common_meta("compare", shape, g);
  r.meta.emplace_back("order", std::to_string(cfg.order));
  Table t;
  t.name = "compare";
  t.columns = {"s [strength]",         "series [energy]",
               "pade [energy]",        "var_gaussian [energy]",
               "var_expsqrt [energy]", "shooting [energy]",
               "reason [-]"};
  t.rows = std::move(rows);
  r.tables.push_back(std::move(t));
  bool any = false;
  for (bool c : complete)
    any = any || c;
  r.exit_code = any ? 0 : 3;
  return r;
}

Report cmd_pade(const RunConfig &cfg) {
  const Potential shape = make_potential(cfg).with_strength(1.0);
  const QuadratureGrid g = make_grid(cfg, shape);
  const EnergySeries es = energy_series(shape, cfg.order, g);
  const PadeApproximant pa =
      pade_with_asymptote(es, depth_of(cfg, shape), cfg.pade_m, cfg.pade_n);

  Report r;
  r.command = "pade";
  r.meta = common_meta("pade", shape, g);
  r.meta.emplace_back("m", std::to_string(pa.m()));
  r.meta.emplace_back("n", std::to_string(pa.n()));
  r.meta.emplace_back("alpha", format_number(pa.alpha));

  Table c;
  c.name = "coefficients";
  c.columns = {"k [-]", "numerator [energy/strength^k]",
               "denominator [1/strength^k]"};
  for (int k = 0; k <= std::max(pa.m(), pa.n()); ++k)
    c.rows.push_back({integer(k), k <= pa.m() ? num(pa.p[k]) : std::nullopt,
                      k <= pa.n() ? num(pa.q[k]) : std::nullopt});
  r.tables.push_back(std::move(c));

  Table e;
  e.name = "evaluations";
  e.columns = {"s [strength]", "pade [energy]", "series [energy]"};
  for (double s : sweep(cfg)) {
    Cell v;
    try {
      v = num(evaluate_pade(pa, s));
    } catch (const Error &) {
      v = std::nullopt; // pole at this s
    }
    e.rows.push_back({num(s), v, num(es.evaluate(s))});
  }
  r.tables.push_back(std::move(e));
  return r;
}

Report cmd_solve(const RunConfig &cfg) {
  const Potential p = make_potential(cfg);
  const BoundStateResult b = shooting_solve(p, cfg.tol);
  Report r;
  r.command = "solve";
  r.meta = {{"command", "solve"}, {"potential", p.describe()},
            {"strength", format_number(p.strength())},
            {"tol", format_number(cfg.tol)}};
  Table t;
  t.name = "bound_state";
  t.columns = {"s [strength]",       "energy [energy]",
               "residual [-]",       "iterations [-]",
               "E_lo [energy]",      "E_hi [energy]",
               "step_error [energy]", "exact [energy]"};
  std::vector<Cell> row{num(p.strength()), num(b.energy), num(b.residual),
                        integer(b.iterations), num(b.E_lo), num(b.E_hi),
                        num(b.step_error), std::nullopt};
  if (auto e = exact_energy(p))
    row[7] = num(*e);
  t.rows.push_back(std::move(row));
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_greens_check(const RunConfig &cfg) {
  const Potential shape = make_potential(cfg).with_strength(1.0);
  const QuadratureGrid g = make_grid(cfg, shape);
  const ResidualFit fit = e4_residual_fit(shape, g, cfg.betas);
  const SymmetrizedBlock sb =
      symmetrized_divergent_block(shape, g, cfg.betas.back());

  Report r;
  r.command = "greens-check";
  r.meta = common_meta("greens-check", shape, g);
  r.meta.emplace_back("e4", format_number(fit.e4));
  r.meta.emplace_back("fit_intercept", format_number(fit.intercept));
  r.meta.emplace_back("fit_slope", format_number(fit.slope));
  r.meta.emplace_back("fit_curvature", format_number(fit.curvature));
  r.meta.emplace_back("divergent_block_symmetrized", format_number(sb.value));
  r.meta.emplace_back("divergent_block_scale", format_number(sb.scale));

  Table t;
  t.name = "residuals";
  t.columns = {"beta [1/length]", "e4_finite_beta [energy/strength^4]",
               "residual [energy/strength^4]",
               "residual_over_beta [length*energy/strength^4]"};
  for (std::size_t i = 0; i < fit.betas.size(); ++i)
    t.rows.push_back({num(fit.betas[i]), num(fit.e4 + fit.residuals[i]),
                      num(fit.residuals[i]),
                      num(fit.residuals[i] / fit.betas[i])});
  r.tables.push_back(std::move(t));
  return r;
}

} // namespace shallowwell::cli

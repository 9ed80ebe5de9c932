#include "shallowwell/potential.hpp"

#include "shallowwell/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace shallowwell {

namespace {

void require_strength(double s) {
  if (!(s >= 0.0) || !std::isfinite(s))
    throw Error(ErrorCode::InvalidPotential,
                "strength must be finite and nonnegative");
}

} // namespace

Potential Potential::square_well(double strength, double halfwidth) {
  require_strength(strength);
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw Error(ErrorCode::InvalidPotential, "halfwidth must be positive");
  Potential p;
  p.m_kind = PotentialKind::SquareWell;
  p.m_strength = strength;
  p.m_halfwidth = halfwidth;
  return p;
}

Potential Potential::poschl_teller(double strength) {
  require_strength(strength);
  Potential p;
  p.m_kind = PotentialKind::PoschlTeller;
  p.m_strength = strength;
  return p;
}

Potential Potential::gaussian(double strength) {
  require_strength(strength);
  Potential p;
  p.m_kind = PotentialKind::Gaussian;
  p.m_strength = strength;
  return p;
}

Potential Potential::tabulated(std::vector<double> xs, std::vector<double> vs) {
  if (xs.size() != vs.size())
    throw Error(ErrorCode::InvalidPotential,
                "sample abscissas and values differ in length");
  if (xs.size() < 2)
    throw Error(ErrorCode::InvalidPotential, "need at least two samples");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(vs[i]))
      throw Error(ErrorCode::InvalidPotential, "non-finite sample");
    if (vs[i] > 0.0)
      throw Error(ErrorCode::InvalidPotential,
                  "tabulated potential must be nonpositive");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw Error(ErrorCode::InvalidPotential,
                  "sample abscissas must be strictly increasing");
  }
  Potential p;
  p.m_kind = PotentialKind::Tabulated;
  p.m_strength = 1.0;
  p.m_xs = std::move(xs);
  p.m_shape.resize(vs.size());
  std::transform(vs.begin(), vs.end(), p.m_shape.begin(),
                 [](double v) { return -v; });
  return p;
}

Potential Potential::with_strength(double strength) const {
  require_strength(strength);
  Potential p = *this;
  p.m_strength = strength;
  return p;
}

double Potential::shape(double x) const {
  switch (m_kind) {
  case PotentialKind::SquareWell:
    return std::abs(x) < m_halfwidth ? 1.0 : 0.0;
  case PotentialKind::PoschlTeller: {
    if (std::abs(x) > 350.0)
      return 0.0;
    const double c = std::cosh(x);
    return 1.0 / (c * c);
  }
  case PotentialKind::Gaussian:
    return std::exp(-x * x);
  case PotentialKind::Tabulated: {
    if (x < m_xs.front() || x > m_xs.back())
      return 0.0;
    const auto it = std::upper_bound(m_xs.begin(), m_xs.end(), x);
    if (it == m_xs.end())
      return m_shape.back();
    const auto j = static_cast<std::size_t>(it - m_xs.begin());
    const double t = (x - m_xs[j - 1]) / (m_xs[j] - m_xs[j - 1]);
    return (1.0 - t) * m_shape[j - 1] + t * m_shape[j];
  }
  }
  return 0.0;
}

double Potential::peak_shape() const {
  if (m_kind == PotentialKind::Tabulated)
    return *std::max_element(m_shape.begin(), m_shape.end());
  return 1.0;
}

std::vector<double> Potential::breakpoints() const {
  if (m_kind == PotentialKind::SquareWell)
    return {-m_halfwidth, m_halfwidth};
  return {};
}

std::string Potential::describe() const {
  std::ostringstream os;
  switch (m_kind) {
  case PotentialKind::SquareWell:
    os << "square_well(a=" << m_halfwidth << ")";
    break;
  case PotentialKind::PoschlTeller:
    os << "poschl_teller";
    break;
  case PotentialKind::Gaussian:
    os << "gaussian";
    break;
  case PotentialKind::Tabulated:
    os << "tabulated(" << m_xs.size() << " samples)";
    break;
  }
  return os.str();
}

double evaluate(const Potential &p, double x) { return p(x); }

double support_radius(const Potential &p, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail < 1.0))
    throw Error(ErrorCode::InvalidPotential, "eps_tail must lie in (0, 1)");
  if (p.kind() == PotentialKind::Tabulated)
    return std::max(std::abs(p.sample_x().front()),
                    std::abs(p.sample_x().back()));
  const double peak = p.peak_shape();
  constexpr std::array<double, 4> ladder{5.0, 10.0, 20.0, 40.0};
  for (double radius : ladder) {
    if (p.shape(radius) / peak < eps_tail &&
        p.shape(-radius) / peak < eps_tail)
      return radius;
  }
  throw Error(ErrorCode::TailNotDecayed,
              "potential tail exceeds eps_tail at every ladder radius");
}

} // namespace shallowwell

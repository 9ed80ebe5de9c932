#pragma once

#include <string>
#include <vector>

namespace shallowwell {

enum class PotentialKind { SquareWell, PoschlTeller, Gaussian, Tabulated };

/// Attractive short-range well V(x) = -s * shape(x) with shape >= 0.
///
/// The analytic kinds are
///   SquareWell    shape = 1 for |x| < a, 0 otherwise
///   PoschlTeller  shape = 1 / cosh^2(x)
///   Gaussian      shape = exp(-x^2)
/// A Tabulated potential stores samples of V at unit strength; it is linearly
/// interpolated inside the sample range and zero outside. Scaling a tabulated
/// potential with with_strength() multiplies the stored samples.
///
/// Potentials are immutable value types.
class Potential {
public:
  static Potential square_well(double strength, double halfwidth);
  static Potential poschl_teller(double strength);
  static Potential gaussian(double strength);
  /// Samples must be strictly increasing in x with values <= 0.
  static Potential tabulated(std::vector<double> xs, std::vector<double> vs);

  PotentialKind kind() const { return m_kind; }
  double strength() const { return m_strength; }
  double halfwidth() const { return m_halfwidth; }
  const std::vector<double> &sample_x() const { return m_xs; }
  const std::vector<double> &sample_shape() const { return m_shape; }

  /// Same shape at a different strength.
  Potential with_strength(double strength) const;

  double shape(double x) const;
  double operator()(double x) const { return -m_strength * shape(x); }

  /// max over x of shape(x)
  double peak_shape() const;

  /// Abscissas where V is not smooth; quadrature panels should end there.
  std::vector<double> breakpoints() const;

  /// Human-readable descriptor, e.g. "gaussian" or "square_well(a=1)".
  std::string describe() const;

private:
  Potential() = default;

  PotentialKind m_kind{PotentialKind::Gaussian};
  double m_strength{0.0};
  double m_halfwidth{1.0};
  std::vector<double> m_xs;
  std::vector<double> m_shape; // -V samples at unit strength
};

/// V(x) = -s * shape(x)
double evaluate(const Potential &p, double x);

/// Smallest L0 in {5, 10, 20, 40} with shape(L0)/max(shape) < eps_tail.
/// Tabulated potentials return the largest |abscissa|.
/// Throws TailNotDecayed when no ladder value is large enough.
double support_radius(const Potential &p, double eps_tail = 1e-12);

} // namespace shallowwell

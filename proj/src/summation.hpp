#pragma once

#include <cmath>

namespace shallowwell::detail {

/// Neumaier's variant of Kahan compensated summation.
class NeumaierSum {
public:
  NeumaierSum &operator+=(double x) {
    const double t = m_sum + x;
    if (std::abs(m_sum) >= std::abs(x))
      m_comp += (m_sum - t) + x;
    else
      m_comp += (x - t) + m_sum;
    m_sum = t;
    return *this;
  }
  double value() const { return m_sum + m_comp; }

private:
  double m_sum{0.0};
  double m_comp{0.0};
};

} // namespace shallowwell::detail

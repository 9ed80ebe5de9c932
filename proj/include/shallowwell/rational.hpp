#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace shallowwell {

/// Exact rational with int64 parts, always reduced, denominator > 0.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return m_num; }
  std::int64_t den() const { return m_den; }
  double value() const {
    return static_cast<double>(m_num) / static_cast<double>(m_den);
  }
  bool is_zero() const { return m_num == 0; }

  /// "p/q", or "p" when q == 1.
  std::string to_string() const;
  /// Accepts "p", "-p", "p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a) { return {-a.m_num, a.m_den}; }
  friend Rational operator-(Rational a, Rational b) { return a + (-b); }
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational &, const Rational &) = default;

private:
  std::int64_t m_num{0};
  std::int64_t m_den{1};
};

} // namespace shallowwell

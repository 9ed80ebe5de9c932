#include "shallowwell/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace shallowwell {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  m_num = g == 0 ? 0 : num / g;
  m_den = g == 0 ? 1 : den / g;
}

Rational operator+(Rational a, Rational b) {
  const std::int64_t l = std::lcm(a.m_den, b.m_den);
  return {a.m_num * (l / a.m_den) + b.m_num * (l / b.m_den), l};
}

Rational operator*(Rational a, Rational b) {
  // cross-reduce first to keep the intermediates small
  const std::int64_t g1 = std::gcd(a.m_num, b.m_den);
  const std::int64_t g2 = std::gcd(b.m_num, a.m_den);
  const std::int64_t n1 = g1 ? a.m_num / g1 : a.m_num;
  const std::int64_t d2 = g1 ? b.m_den / g1 : b.m_den;
  const std::int64_t n2 = g2 ? b.m_num / g2 : b.m_num;
  const std::int64_t d1 = g2 ? a.m_den / g2 : a.m_den;
  return {n1 * n2, d1 * d2};
}

std::string Rational::to_string() const {
  if (m_den == 1)
    return std::to_string(m_num);
  return std::to_string(m_num) + "/" + std::to_string(m_den);
}

Rational Rational::parse(std::string_view text) {
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '+')
      s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad rational component '" +
                                  std::string(s) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return {to_int(text), 1};
  return {to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
}

} // namespace shallowwell

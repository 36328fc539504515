#include "rational.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace fracsum {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (s.empty()) return std::nullopt;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = parse_int(trim(text.substr(0, slash)));
    const auto q = parse_int(trim(text.substr(slash + 1)));
    if (!p || !q || *q == 0) return std::nullopt;
    return Rational::make(*p, *q);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 17) return std::nullopt;
    digits += frac;
    const auto v = parse_int(digits);
    if (!v) return std::nullopt;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational::make(*v, den);
  }
  if (const auto v = parse_int(text)) return Rational::make(*v, 1);
  return std::nullopt;
}

std::optional<Rational> exact_dyadic(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  constexpr double kScale = 1073741824.0;  // 2^30
  const double scaled = x * kScale;
  if (std::abs(scaled) > 9.0e15 || scaled != std::floor(scaled)) return std::nullopt;
  return Rational::make(static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(kScale));
}

}  // namespace fracsum

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fracsum {

/// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parses "p/q", an integer, or a plain decimal such as "0.25" exactly.
std::optional<Rational> parse_rational(std::string_view text);

/// Exact rational value of a double when its denominator is a power of two
/// no larger than 2^30 (e.g. 0.5, 0.375); nullopt otherwise.
std::optional<Rational> exact_dyadic(double x);

/// A real parameter together with its exact value when one is known.
struct ExactReal {
  double value = 0.0;
  std::optional<Rational> exact;

  static ExactReal from_double(double x) { return {x, exact_dyadic(x)}; }
  static ExactReal from_rational(Rational r) { return {r.value(), r}; }
};

}  // namespace fracsum

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "point.hpp"

namespace fracsum {

// Seeded sampler built directly on mt19937_64 output bits, so sample streams
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  double normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  Point unit_vector(int dim) {
    for (;;) {
      Point p(dim);
      for (int i = 0; i < dim; ++i) p[i] = normal();
      const double n = norm(p);
      if (n > 1e-12) return p * (1.0 / n);
    }
  }

  /// Point of the closed ball; one draw in eight lands on the sphere.
  Point in_ball(const Point& center, double radius) {
    const int d = center.dim();
    const double r = index(8) == 0 ? radius : radius * std::pow(uniform(), 1.0 / d);
    return center + unit_vector(d) * r;
  }

  /// Random probability vector of length n. Half of the draws are supported
  /// on a random subset of at most `sparse_max` entries, which exercises
  /// faces of the simplex.
  std::vector<double> probability_vector(std::size_t n, std::size_t sparse_max) {
    std::vector<double> w(n, 0.0);
    const bool sparse = n > 1 && index(2) == 0;
    const std::size_t k = sparse ? 1 + index(std::min(n, sparse_max)) : n;
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = sparse ? index(n) : j;
      double u = uniform();
      while (u <= 0.0) u = uniform();
      const double e = -std::log(u);
      w[i] += e;
      total += e;
    }
    for (double& x : w) x /= total;
    return w;
  }

  Point convex_combination(std::span<const Point> pts) {
    const auto w = probability_vector(pts.size(), static_cast<std::size_t>(pts.front().dim()) + 1);
    Point z(pts.front().dim());
    for (std::size_t i = 0; i < pts.size(); ++i) z += w[i] * pts[i];
    return z;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fracsum

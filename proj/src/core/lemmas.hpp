#pragma once

#include <cstdint>
#include <span>

#include "geom.hpp"

namespace fracsum {

// Randomized regression guards for the convex-geometry facts the sum theorems
// rest on. Each returns true iff every sample passes; all are deterministic
// given the seed.

inline constexpr int kDefaultLemmaSamples = 256;

/// conv(A) + conv(eps A) == conv(A) + eps A for 0 <= eps <= 1/|A|.
/// Throws EpsOutOfRange outside that range unless `force` is set.
bool check_lemma_sum_absorption(std::span<const Point> A, double eps, std::uint64_t seed,
                                int samples = kDefaultLemmaSamples, bool force = false);

/// If |a| >= R on A then |z| >= R - diam(A)^2 / (2R) on conv(A).
bool check_distance_bound(std::span<const Point> A, double R, std::uint64_t seed,
                          int samples = kDefaultLemmaSamples);

/// B(z, r) in conv(A) and A within delta of F imply U(z, r - delta) in conv(F).
bool check_perturbation_lemma(std::span<const Point> A, std::span<const Point> F, const Point& z,
                              double r, double delta, std::uint64_t seed,
                              int samples = kDefaultLemmaSamples);

/// conv(A) containing B(y, r) and R > diam(A)^2 / r imply
/// B(z, R) + A contains B(z, R) + B(y, r/2), checked by nearest translate.
bool check_ball_sum_cover(std::span<const Point> A, const Point& y, double r, double R,
                          const Point& z, std::uint64_t seed, int samples = kDefaultLemmaSamples);

/// Facet slack of a ball: min over facets of (offset - n.center); the ball
/// B(center, r) lies in the polytope iff this is >= r (full-dimensional case).
double inscribed_slack(const Polytope& p, const Point& center);

}  // namespace fracsum

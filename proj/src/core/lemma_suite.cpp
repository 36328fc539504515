#include "lemma_suite.hpp"

#include <algorithm>
#include <vector>

#include "geom.hpp"
#include "lemmas.hpp"
#include "random.hpp"

namespace fracsum {

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finaliser
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Point> cloud(Rng& rng, int dim, std::size_t m, double scale) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < m; ++i) {
    Point p(dim);
    for (int a = 0; a < dim; ++a) p[a] = rng.uniform(-scale, scale);
    pts.push_back(p);
  }
  return pts;
}

// A full-dimensional cloud with inscribed radius at least 0.05.
std::vector<Point> fat_cloud(Rng& rng, int dim, InscribedBall& ball) {
  for (;;) {
    auto pts = cloud(rng, dim, static_cast<std::size_t>(dim) + 1 + rng.index(6), 1.0);
    ball = chebyshev_center(convex_hull(pts, dim));
    if (ball.radius >= 0.05) return pts;
  }
}

bool trial(int lemma, int dim, std::uint64_t seed, int samples) {
  Rng rng(seed);
  switch (lemma) {
    case 0: {
      const auto A = cloud(rng, dim, 1 + rng.index(2 * static_cast<std::size_t>(dim) + 3), 1.0);
      const double eps = rng.uniform(0.0, 1.0 / static_cast<double>(A.size()));
      return check_lemma_sum_absorption(A, eps, rng.engine()(), samples);
    }
    case 1: {
      // Points outside B(0, R) clustered around one direction, so the bound is not vacuous.
      const double R = rng.uniform(1.0, 3.0);
      const Point u = rng.unit_vector(dim);
      const double spread = rng.uniform(0.05, 0.6);
      std::vector<Point> A;
      const std::size_t m = 1 + rng.index(8);
      for (std::size_t i = 0; i < m; ++i) {
        Point v = u + rng.unit_vector(dim) * (spread * rng.uniform());
        v *= 1.0 / norm(v);
        A.push_back(v * (R * rng.uniform(1.0, 1.2)));
      }
      return check_distance_bound(A, R, rng.engine()(), samples);
    }
    case 2: {
      InscribedBall fb;
      const auto F = fat_cloud(rng, dim, fb);
      const double p = 0.2 * fb.radius * rng.uniform(0.05, 1.0);
      std::vector<Point> A;
      for (const Point& f : F) A.push_back(rng.in_ball(f, p));
      const double delta = p * 1.001 + 1e-12;
      const InscribedBall ab = chebyshev_center(convex_hull(A, dim));
      const double r = std::max(ab.radius * rng.uniform(0.5, 1.0), 2.0 * delta);
      return check_perturbation_lemma(A, F, ab.center, std::min(r, ab.radius), delta, rng.engine()(),
                                      samples);
    }
    default: {
      InscribedBall b;
      const auto A = fat_cloud(rng, dim, b);
      const double r = b.radius * rng.uniform(0.5, 1.0);
      const double diam = diameter(A);
      const double R = diam * diam / r * rng.uniform(1.01, 2.0);
      Point z(dim);
      for (int a = 0; a < dim; ++a) z[a] = rng.uniform(-5.0, 5.0);
      return check_ball_sum_cover(A, b.center, r, R, z, rng.engine()(), samples);
    }
  }
}

}  // namespace

LemmaTally run_lemma_trials(int lemma, int dim, int trials, std::uint64_t seed, int samples) {
  if (lemma < 0 || lemma >= static_cast<int>(kLemmaNames.size()))
    fail(ErrorCode::InvalidArgument, "unknown lemma index " + std::to_string(lemma));
  if (dim < 1 || dim > kMaxDim) fail(ErrorCode::DimensionMismatch, "lemma trials need 1 <= d <= 3");
  LemmaTally t{kLemmaNames[lemma], dim, trials, 0, 0};
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = mix(seed ^ mix((static_cast<std::uint64_t>(lemma) << 40) ^
                                           (static_cast<std::uint64_t>(dim) << 32) ^ static_cast<std::uint64_t>(i)));
    try {
      if (!trial(lemma, dim, s, samples)) ++t.failures;
    } catch (const Error&) {
      ++t.errors;
    }
  }
  return t;
}

}  // namespace fracsum

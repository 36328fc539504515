#include "lemmas.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "random.hpp"

namespace fracsum {

namespace {

int common_dim(std::span<const Point> A) {
  if (A.empty()) fail(ErrorCode::InvalidArgument, "lemma check: empty point set");
  const int d = A.front().dim();
  require_dim(A, d);
  return d;
}

}  // namespace

double inscribed_slack(const Polytope& p, const Point& center) {
  if (p.degenerate()) return -std::numeric_limits<double>::infinity();
  double s = std::numeric_limits<double>::infinity();
  for (const Halfspace& h : p.facets()) s = std::min(s, h.offset - dot(h.normal, center));
  return s;
}

bool check_lemma_sum_absorption(std::span<const Point> A, double eps, std::uint64_t seed,
                                int samples, bool force) {
  const int d = common_dim(A);
  const double n = static_cast<double>(A.size());
  if (!force && (eps < 0.0 || eps > 1.0 / n))
    fail(ErrorCode::EpsOutOfRange,
         "eps = " + std::to_string(eps) + " outside [0, 1/" + std::to_string(A.size()) + "]");

  const Polytope hull = convex_hull(A, d);
  std::vector<Point> scaled(A.begin(), A.end());
  for (Point& p : scaled) p *= eps;
  const Polytope scaled_hull = convex_hull(scaled, d);

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    // conv(A) + eps A is inside conv(A) + conv(eps A): each eps a_j is in conv(eps A).
    const std::size_t j = rng.index(A.size());
    if (!contains_point(scaled_hull, scaled[j])) return false;

    // conv(A) + conv(eps A) is inside conv(A) + eps A: some translate absorbs x + y.
    const Point x = rng.convex_combination(A);
    const Point y = rng.convex_combination(scaled);
    const Point sum = x + y;
    const bool absorbed = std::any_of(scaled.begin(), scaled.end(), [&](const Point& ea) {
      return contains_point(hull, sum - ea);
    });
    if (!absorbed) return false;
  }
  return true;
}

bool check_distance_bound(std::span<const Point> A, double R, std::uint64_t seed, int samples) {
  common_dim(A);
  for (const Point& a : A)
    if (norm(a) < R - kTolGeo)
      fail(ErrorCode::PreconditionViolated, "distance bound: some |a| < R");
  const double diam = diameter(A);
  const double bound = R - diam * diam / (2.0 * R);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (norm(rng.convex_combination(A)) < bound - kTolGeo) return false;
  return true;
}

bool check_perturbation_lemma(std::span<const Point> A, std::span<const Point> F, const Point& z,
                              double r, double delta, std::uint64_t seed, int samples) {
  const int d = common_dim(A);
  if (common_dim(F) != d || z.dim() != d)
    fail(ErrorCode::DimensionMismatch, "perturbation lemma: dimension mismatch");
  if (!(delta > 0.0 && delta < r))
    fail(ErrorCode::PreconditionViolated, "perturbation lemma: need 0 < delta < r");
  const Polytope hull_a = convex_hull(A, d);
  if (inscribed_slack(hull_a, z) < r - kTolGeo)
    fail(ErrorCode::PreconditionViolated, "perturbation lemma: B(z, r) not inside conv(A)");
  for (const Point& a : A) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& f : F) best = std::min(best, distance(a, f));
    if (!(best < delta))
      fail(ErrorCode::PreconditionViolated, "perturbation lemma: A not within delta of F");
  }
  const Polytope hull_f = convex_hull(F, d);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!contains_point(hull_f, rng.in_ball(z, r - delta))) return false;
  return true;
}

bool check_ball_sum_cover(std::span<const Point> A, const Point& y, double r, double R,
                          const Point& z, std::uint64_t seed, int samples) {
  const int d = common_dim(A);
  if (y.dim() != d || z.dim() != d) fail(ErrorCode::DimensionMismatch, "ball sum cover: dimension mismatch");
  const Polytope hull = convex_hull(A, d);
  if (!(r > 0.0) || inscribed_slack(hull, y) < r - kTolGeo)
    fail(ErrorCode::PreconditionViolated, "ball sum cover: B(y, r) not inside conv(A)");
  const double diam = diameter(A);
  if (!(R > diam * diam / r))
    fail(ErrorCode::PreconditionViolated, "ball sum cover: need R > diam(A)^2 / r");

  // B(z, R) + B(y, r/2) = B(z + y, R + r/2).
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Point p = rng.in_ball(z + y, R + r / 2.0);
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point& a : A) nearest = std::min(nearest, distance(p - z, a));
    if (nearest > R + kTolGeo) return false;
  }
  return true;
}

}  // namespace fracsum

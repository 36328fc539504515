#pragma once

#include <cstdint>
#include <vector>

#include "geom.hpp"
#include "ifs.hpp"
#include "point_index.hpp"
#include "rational.hpp"

namespace fracsum {

enum class BoundKind { Empirical, CertifiedSelfSimilar };

const char* bound_kind_name(BoundKind k) noexcept;

struct ThicknessBound {
  double value = 0.0;
  BoundKind kind = BoundKind::Empirical;

  // Certified: value = rho_min * r0 / diam_ub.
  double rho_min = 0.0;
  double r0 = 0.0;
  double diam_ub = 0.0;
  bool flat_sample = false;

  // Empirical: the sampled grid and the (x, r) attaining the minimum.
  std::size_t centers = 0;
  std::size_t radii = 0;
  double r_max = 0.0;
  double r_min = 0.0;
  double eps = 0.0;
  Point argmin_x;
  double argmin_r = 0.0;
};

struct EstimateOptions {
  int radii_per_decade = 8;
  std::uint64_t seed = 0;
  std::size_t sampled_centers = 256;
  unsigned workers = 0;
};

/// min over sampled centres x (hull vertices of the inner points plus seeded
/// samples) and a geometric radius grid of cheb_radius(conv(P in B(x,r))) / r.
/// An estimate of the thickness, not a bound.
ThicknessBound estimate_thickness(const CylinderCover& cover, const EstimateOptions& opts = {});

/// rho_min * r0 / diam_ub with r0 the inscribed radius of conv(inner points)
/// and diam_ub the diameter of the outer ball union: a lower bound on the
/// thickness of a self-similar attractor.
ThicknessBound certified_self_similar_bound(const Ifs& ifs, const CylinderCover& cover);

struct PackingWitness {
  Point center_x;
  double radius_r = 0.0;
  double c = 0.0;
  std::vector<Point> selection;   // cr/2-separated, lexicographic first-fit
  std::size_t padded_count = 0;   // N
  InscribedBall inscribed;

  /// The selection padded to N points by repeating its last point.
  std::vector<Point> points() const;
};

/// floor(((4 + c) / c)^d), exact when c is.
std::uint64_t packing_count(const ExactReal& c, int dim);

/// Greedy cr/2-separated subset of the inner points in B(x, r); WitnessFailed
/// when its hull does not contain a ball of radius cr/2 - 2 eps.
PackingWitness extract_packing_witness(const CylinderCover& cover, const Point& x, double r, double c);

/// Same, over a prebuilt index of the inner points (for repeated queries).
PackingWitness extract_packing_witness(const PointIndex& index, int dim, double eps, const Point& x,
                                       double r, double c);

/// Samples B(inscribed centre, radius) and checks each sample against the
/// hull of the selection.
bool witness_ball_sampled(const PackingWitness& w, double radius, std::uint64_t seed, int samples = 100);

/// Smallest integer n with n > 2048 / c^3 + 1, by exact integer arithmetic on
/// the exact value of c (the binary value of the double when no rational is
/// attached). InvalidC unless 0 < c <= 1.
std::uint64_t sum_threshold(const ExactReal& c);

}  // namespace fracsum

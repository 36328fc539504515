#pragma once

#include <array>
#include <span>
#include <vector>

#include "point.hpp"

namespace fracsum {

/// The closed halfspace { x : normal . x <= offset } with a unit normal.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

/// Largest ball contained in a polytope (radius 0 for flat polytopes).
struct InscribedBall {
  Point center;
  double radius = 0.0;
};

/// Convex polytope in R^d held in both V- and H-representation.
///
/// Flat inputs (affinely dependent vertices) are represented inside their
/// affine span: the facets bound the hull within the span, and membership
/// additionally requires the distance to the span to be within tolerance.
class Polytope {
 public:
  int dim() const noexcept { return dim_; }
  int affine_dim() const noexcept { return affine_dim_; }
  bool degenerate() const noexcept { return affine_dim_ < dim_; }

  /// Extreme points of the hull (a minimal subset of the input).
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Halfspace>& facets() const noexcept { return facets_; }

  /// Distance from x to the polytope (0 inside).
  double distance(const Point& x) const;

  /// Distance from x to the affine span of the polytope.
  double distance_to_span(const Point& x) const;

  Polytope scaled(double s) const;
  Polytope translated(const Point& t) const;

 private:
  friend Polytope convex_hull(std::span<const Point>, int);

  Point to_local(const Point& x) const;
  double local_distance(const Point& local) const;

  int dim_ = 0;
  int affine_dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;

  // Affine frame: basis_[0..affine_dim_) spans the hull, the rest are normals.
  Point origin_;
  std::array<Point, kMaxDim> basis_{};

  // Hull in local (span) coordinates: m=1 [lo, hi]; m=2 CCW ring; m=3 vertices
  // plus boundary triangles.
  std::vector<Point> local_;
  std::vector<std::array<Point, 3>> triangles_;
  std::vector<Halfspace> local_facets_;
};

/// Hull by min/max (d=1), monotone chain (d=2) or incremental construction
/// with horizon repair (d=3). Flat inputs are projected onto their affine span.
Polytope convex_hull(std::span<const Point> points, int dim);

/// Chebyshev center by a dense LP (Bland's rule) over the facet list.
InscribedBall chebyshev_center(const Polytope& p);

/// True iff x satisfies every facet within tol (and lies within tol of the
/// affine span for flat polytopes).
bool contains_point(const Polytope& p, const Point& x, double tol = kTolGeo);

/// Two-sided Hausdorff distance between two polytopes (exact, vertex-attained).
double hausdorff_distance(const Polytope& a, const Polytope& b);

/// Largest pairwise distance.
double diameter(std::span<const Point> points);

/// Euclidean distance from p to triangle abc in R^3.
double point_triangle_distance(const Point& p, const Point& a, const Point& b, const Point& c);

}  // namespace fracsum

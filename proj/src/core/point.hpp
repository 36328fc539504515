#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace fracsum {

inline constexpr int kMaxDim = 3;

// Absolute tolerance for facet and membership comparisons; coordinates are
// assumed to be O(1).
inline constexpr double kTolGeo = 1e-9;

/// A point (or vector) in R^d, d in {1,2,3}. Unused trailing coordinates are 0.
class Point {
 public:
  Point() = default;

  explicit Point(int dim) : dim_(dim) { check_dim(dim); }

  Point(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
    check_dim(dim_);
    int i = 0;
    for (double c : coords) x_[i++] = c;
  }

  static Point from_span(std::span<const double> coords) {
    Point p(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) p.x_[i] = coords[i];
    return p;
  }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return x_[i]; }
  double& operator[](int i) noexcept { return x_[i]; }
  const double* data() const noexcept { return x_.data(); }

  bool finite() const noexcept {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite(x_[i])) return false;
    return true;
  }

  Point& operator+=(const Point& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) x_[i] += o.x_[i];
    return *this;
  }
  Point& operator-=(const Point& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) x_[i] -= o.x_[i];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (int i = 0; i < kMaxDim; ++i) x_[i] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend Point operator-(Point a) noexcept { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    return a.dim_ == b.dim_ && a.x_ == b.x_;
  }

  // Lexicographic order on coordinates.
  friend bool operator<(const Point& a, const Point& b) noexcept { return a.x_ < b.x_; }

 private:
  static void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
      fail(ErrorCode::DimensionMismatch, "dimension must be 1, 2 or 3");
  }

  std::array<double, kMaxDim> x_{};
  int dim_ = 0;
};

inline double dot(const Point& a, const Point& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Point& a) noexcept { return dot(a, a); }
inline double norm(const Point& a) noexcept { return std::sqrt(norm2(a)); }
inline double distance(const Point& a, const Point& b) noexcept { return norm(a - b); }

inline Point cross(const Point& a, const Point& b) {
  Point r(3);
  r[0] = a[1] * b[2] - a[2] * b[1];
  r[1] = a[2] * b[0] - a[0] * b[2];
  r[2] = a[0] * b[1] - a[1] * b[0];
  return r;
}

/// Closed ball B(center, radius).
struct Ball {
  Point center;
  double radius = 0.0;
};

/// Axis-aligned box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  bool contains(const Point& p, double tol = kTolGeo) const noexcept {
    for (int i = 0; i < lo.dim(); ++i)
      if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
  }
};

inline Box bounding_box(std::span<const Point> pts) {
  if (pts.empty()) fail(ErrorCode::InvalidArgument, "bounding box of an empty point list");
  Box b{pts.front(), pts.front()};
  for (const Point& p : pts)
    for (int i = 0; i < p.dim(); ++i) {
      b.lo[i] = std::min(b.lo[i], p[i]);
      b.hi[i] = std::max(b.hi[i], p[i]);
    }
  return b;
}

inline void require_dim(std::span<const Point> pts, int dim) {
  for (const Point& p : pts)
    if (p.dim() != dim) fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
}

}  // namespace fracsum

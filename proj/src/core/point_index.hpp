#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "point.hpp"

namespace fracsum {

// Points sorted lexicographically; ball queries bisect on the first
// coordinate and filter the slab. Results come back in lexicographic order.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Point> pts) : pts_(pts.begin(), pts.end()) {
    std::sort(pts_.begin(), pts_.end());
  }

  const std::vector<Point>& sorted() const noexcept { return pts_; }

  std::vector<Point> ball(const Point& x, double r) const {
    std::vector<Point> out;
    const double r2 = r * r;
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x[0] - r,
                               [](const Point& p, double v) { return p[0] < v; });
    for (; it != pts_.end() && (*it)[0] <= x[0] + r; ++it)
      if (norm2(*it - x) <= r2) out.push_back(*it);
    return out;
  }

  /// Distance from x to the nearest indexed point, searched up to `limit`.
  double nearest_within(const Point& x, double limit) const {
    double best = limit;
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x[0] - limit,
                               [](const Point& p, double v) { return p[0] < v; });
    for (; it != pts_.end() && (*it)[0] <= x[0] + limit; ++it) best = std::min(best, distance(*it, x));
    return best;
  }

 private:
  std::vector<Point> pts_;
};

}  // namespace fracsum

#include "geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "simplex.hpp"

namespace fracsum {

namespace {

struct Frame {
  int m = 0;
  Point origin;
  std::array<Point, kMaxDim> basis{};
};

Point unit_axis(int dim, int i) {
  Point e(dim);
  e[i] = 1.0;
  return e;
}

// Affine span by greedy farthest-point Gram-Schmidt. Flatness threshold is
// relative to the extent of the point set.
Frame affine_frame(std::span<const Point> pts, int dim, double& extent) {
  Frame f;
  const Point p0 = *std::min_element(pts.begin(), pts.end());
  extent = 0.0;
  for (const Point& p : pts) extent = std::max(extent, distance(p, p0));
  f.origin = p0;
  const double thr = kTolGeo * extent;

  std::vector<Point> dirs;
  if (extent > 0.0) {
    for (int k = 0; k < dim; ++k) {
      double best = -1.0;
      Point best_r(dim);
      for (const Point& p : pts) {
        Point r = p - p0;
        for (const Point& e : dirs) r -= dot(r, e) * e;
        const double len = norm(r);
        if (len > best) {
          best = len;
          best_r = r;
        }
      }
      if (best <= thr) break;
      dirs.push_back(best_r * (1.0 / best));
    }
  }
  f.m = static_cast<int>(dirs.size());
  if (f.m == dim) {
    // Full-dimensional: use the ambient coordinates directly.
    f.origin = Point(dim);
    for (int i = 0; i < dim; ++i) f.basis[i] = unit_axis(dim, i);
    return f;
  }
  for (int i = 0; i < f.m; ++i) f.basis[i] = dirs[i];
  // Complete with orthonormal normals to the span.
  int filled = f.m;
  for (int axis = 0; axis < dim && filled < dim; ++axis) {
    Point r = unit_axis(dim, axis);
    for (int i = 0; i < filled; ++i) r -= dot(r, f.basis[i]) * f.basis[i];
    const double len = norm(r);
    if (len > 1e-6) f.basis[filled++] = r * (1.0 / len);
  }
  return f;
}

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = norm2(ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

// Monotone chain on local 2-D coordinates. Returns indices of the CCW ring.
std::vector<std::size_t> monotone_chain(const std::vector<Point>& loc, double extent) {
  std::vector<std::size_t> idx(loc.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (loc[a][0] != loc[b][0]) return loc[a][0] < loc[b][0];
    return loc[a][1] < loc[b][1];
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return loc[a] == loc[b]; }),
            idx.end());
  const double tol = 1e-12 * extent * extent;
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross2(loc[hull[k - 2]], loc[hull[k - 1]], loc[idx[i]]) <= tol) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross2(loc[hull[k - 2]], loc[hull[k - 1]], loc[idx[i - 1]]) <= tol) --k;
    hull[k++] = idx[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

struct Face {
  std::array<std::size_t, 3> v;
  Point n;
  double off = 0.0;
};

Face make_face(const std::vector<Point>& p, std::size_t a, std::size_t b, std::size_t c,
               const Point& interior) {
  Face f{{a, b, c}, cross(p[b] - p[a], p[c] - p[a]), 0.0};
  const double len = norm(f.n);
  f.n *= 1.0 / len;
  f.off = dot(f.n, p[a]);
  if (dot(f.n, interior) > f.off) {
    std::swap(f.v[1], f.v[2]);
    f.n = -f.n;
    f.off = -f.off;
  }
  return f;
}

// Incremental 3-D hull over full-dimensional input. Returns live faces.
std::vector<Face> incremental_hull(const std::vector<Point>& p, double extent) {
  const std::size_t n = p.size();
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (p[i] < p[i0]) i0 = i;
  std::size_t i1 = i0;
  for (std::size_t i = 0; i < n; ++i)
    if (distance(p[i], p[i0]) > distance(p[i1], p[i0])) i1 = i;
  const Point u = p[i1] - p[i0];
  std::size_t i2 = i0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dd = norm(cross(u, p[i] - p[i0]));
    if (dd > best) {
      best = dd;
      i2 = i;
    }
  }
  const Point nrm = cross(u, p[i2] - p[i0]);
  std::size_t i3 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dd = std::abs(dot(nrm, p[i] - p[i0]));
    if (dd > best) {
      best = dd;
      i3 = i;
    }
  }
  const Point interior = (p[i0] + p[i1] + p[i2] + p[i3]) * 0.25;

  std::vector<Face> faces;
  faces.push_back(make_face(p, i0, i1, i2, interior));
  faces.push_back(make_face(p, i0, i1, i3, interior));
  faces.push_back(make_face(p, i0, i2, i3, interior));
  faces.push_back(make_face(p, i1, i2, i3, interior));

  // Farthest-first insertion keeps near-coplanar configurations rare.
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3) rest.push_back(i);
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return distance(p[a], interior) > distance(p[b], interior);
  });

  const double tol_vis = 1e-12 * std::max(extent, 1e-300);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_face;
  for (std::size_t i : rest) {
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (dot(faces[f].n, p[i]) - faces[f].off > tol_vis) visible[f] = 1, any = true;
    if (!any) continue;

    // Faces coplanar with the new point and adjacent to the visible region
    // are replaced as well, so no zero-area triangles get created.
    edge_face.clear();
    for (std::size_t f = 0; f < faces.size(); ++f)
      for (int e = 0; e < 3; ++e) edge_face[{faces[f].v[e], faces[f].v[(e + 1) % 3]}] = f;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        if (visible[f] || std::abs(dot(faces[f].n, p[i]) - faces[f].off) > tol_vis) continue;
        for (int e = 0; e < 3; ++e) {
          auto it = edge_face.find({faces[f].v[(e + 1) % 3], faces[f].v[e]});
          if (it != edge_face.end() && visible[it->second]) {
            visible[f] = 1;
            grew = true;
            break;
          }
        }
      }
    }

    std::vector<Face> next;
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) {
        next.push_back(faces[f]);
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        auto it = edge_face.find({b, a});
        if (it == edge_face.end() || !visible[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (const auto& [a, b] : horizon) {
      if (norm(cross(p[b] - p[a], p[i] - p[a])) <= 1e-14 * extent * extent) continue;
      next.push_back(make_face(p, a, b, i, interior));
    }
    faces = std::move(next);
  }
  return faces;
}

double det3(const Point& a, const Point& b, const Point& c) { return dot(a, cross(b, c)); }

}  // namespace

Point Polytope::to_local(const Point& x) const {
  if (affine_dim_ == 0) return Point();
  Point l(affine_dim_);
  const Point r = x - origin_;
  for (int i = 0; i < affine_dim_; ++i) l[i] = dot(r, basis_[i]);
  return l;
}

double Polytope::distance_to_span(const Point& x) const {
  const Point r = x - origin_;
  double s = 0.0;
  for (int i = affine_dim_; i < dim_; ++i) {
    const double c = dot(r, basis_[i]);
    s += c * c;
  }
  return std::sqrt(s);
}

double Polytope::local_distance(const Point& l) const {
  switch (affine_dim_) {
    case 0:
      return 0.0;
    case 1:
      return std::max({local_[0][0] - l[0], 0.0, l[0] - local_[1][0]});
    default:
      break;
  }
  bool inside = true;
  for (const Halfspace& h : local_facets_)
    if (dot(h.normal, l) > h.offset) {
      inside = false;
      break;
    }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (affine_dim_ == 2) {
    for (std::size_t i = 0; i < local_.size(); ++i)
      best = std::min(best, point_segment_distance(l, local_[i], local_[(i + 1) % local_.size()]));
  } else {
    for (const auto& t : triangles_)
      best = std::min(best, point_triangle_distance(l, t[0], t[1], t[2]));
  }
  return best;
}

double Polytope::distance(const Point& x) const {
  if (x.dim() != dim_) fail(ErrorCode::DimensionMismatch, "polytope distance: dimension mismatch");
  const double a = local_distance(to_local(x));
  const double b = distance_to_span(x);
  return std::sqrt(a * a + b * b);
}

Polytope Polytope::scaled(double s) const {
  std::vector<Point> v = vertices_;
  for (Point& p : v) p *= s;
  return convex_hull(v, dim_);
}

Polytope Polytope::translated(const Point& t) const {
  std::vector<Point> v = vertices_;
  for (Point& p : v) p += t;
  return convex_hull(v, dim_);
}

Polytope convex_hull(std::span<const Point> points, int dim) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "convex_hull: no points");
  if (dim < 1 || dim > kMaxDim) fail(ErrorCode::DimensionMismatch, "convex_hull: bad dimension");
  require_dim(points, dim);
  for (const Point& p : points)
    if (!p.finite()) fail(ErrorCode::InvalidArgument, "convex_hull: non-finite coordinate");

  Polytope poly;
  poly.dim_ = dim;
  double extent = 0.0;
  const Frame f = affine_frame(points, dim, extent);
  poly.affine_dim_ = f.m;
  poly.origin_ = f.origin;
  poly.basis_ = f.basis;

  const int m = f.m;
  if (m == 0) {
    poly.vertices_ = {f.origin};
    return poly;
  }

  std::vector<Point> loc;
  loc.reserve(points.size());
  for (const Point& p : points) loc.push_back(poly.to_local(p));

  std::vector<Halfspace> lf;
  if (m == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < loc.size(); ++i) {
      if (loc[i][0] < loc[lo][0]) lo = i;
      if (loc[i][0] > loc[hi][0]) hi = i;
    }
    poly.local_ = {loc[lo], loc[hi]};
    poly.vertices_ = {points[lo], points[hi]};
    lf.push_back({Point{-1.0}, -loc[lo][0]});
    lf.push_back({Point{1.0}, loc[hi][0]});
  } else if (m == 2) {
    const auto ring = monotone_chain(loc, extent);
    for (std::size_t i : ring) {
      poly.local_.push_back(loc[i]);
      poly.vertices_.push_back(points[i]);
    }
    const std::size_t r = ring.size();
    for (std::size_t i = 0; i < r; ++i) {
      const Point& a = poly.local_[i];
      const Point& b = poly.local_[(i + 1) % r];
      Point nrm{b[1] - a[1], -(b[0] - a[0])};
      nrm *= 1.0 / norm(nrm);
      lf.push_back({nrm, dot(nrm, a)});
    }
  } else {
    std::vector<std::size_t> order(loc.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return loc[a] < loc[b]; });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](std::size_t a, std::size_t b) { return loc[a] == loc[b]; }),
                order.end());
    std::vector<Point> uniq;
    for (std::size_t i : order) uniq.push_back(loc[i]);
    const auto faces = incremental_hull(uniq, extent);

    // Merge coplanar triangles into facets.
    const double off_tol = kTolGeo * std::max(1.0, extent);
    std::vector<std::vector<int>> planes_of(uniq.size());
    for (const Face& fc : faces) {
      poly.triangles_.push_back({uniq[fc.v[0]], uniq[fc.v[1]], uniq[fc.v[2]]});
      int id = -1;
      for (std::size_t j = 0; j < lf.size(); ++j)
        if (norm(lf[j].normal - fc.n) < 1e-9 && std::abs(lf[j].offset - fc.off) < off_tol) {
          id = static_cast<int>(j);
          break;
        }
      if (id < 0) {
        id = static_cast<int>(lf.size());
        lf.push_back({fc.n, fc.off});
      }
      for (std::size_t v : fc.v) planes_of[v].push_back(id);
    }
    // A hull vertex is extreme iff its incident facet normals span R^3.
    for (std::size_t v = 0; v < uniq.size(); ++v) {
      auto& ids = planes_of[v];
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      bool extreme = false;
      for (std::size_t a = 0; a < ids.size() && !extreme; ++a)
        for (std::size_t b = a + 1; b < ids.size() && !extreme; ++b)
          for (std::size_t c = b + 1; c < ids.size() && !extreme; ++c)
            extreme = std::abs(det3(lf[ids[a]].normal, lf[ids[b]].normal, lf[ids[c]].normal)) > 1e-9;
      if (extreme) {
        poly.local_.push_back(uniq[v]);
        poly.vertices_.push_back(points[order[v]]);
      }
    }
  }

  poly.local_facets_ = lf;
  for (const Halfspace& h : lf) {
    Point n(dim);
    for (int i = 0; i < m; ++i) n += h.normal[i] * f.basis[i];
    poly.facets_.push_back({n, h.offset + dot(n, f.origin)});
  }
  return poly;
}

InscribedBall chebyshev_center(const Polytope& p) {
  const int d = p.dim();
  Point centroid(d);
  for (const Point& v : p.vertices()) centroid += v;
  centroid *= 1.0 / static_cast<double>(p.vertices().size());
  if (p.degenerate()) return {centroid, 0.0};

  // Variables: y+ (d), y- (d), r; center = centroid + y+ - y-.
  const std::size_t nv = 2 * static_cast<std::size_t>(d) + 1;
  const auto& facets = p.facets();
  std::vector<double> A(facets.size() * nv, 0.0), b(facets.size()), c(nv, 0.0);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      A[i * nv + j] = facets[i].normal[j];
      A[i * nv + d + j] = -facets[i].normal[j];
    }
    A[i * nv + 2 * d] = 1.0;
    b[i] = std::max(0.0, facets[i].offset - dot(facets[i].normal, centroid));
  }
  c[2 * d] = 1.0;
  const lp::Solution sol = lp::maximize(A, b, c);
  if (sol.status != lp::Status::Optimal)
    fail(ErrorCode::Internal, "chebyshev_center: LP unbounded for a vertex-derived polytope");
  Point center = centroid;
  for (int j = 0; j < d; ++j) center[j] += sol.x[j] - sol.x[d + j];
  return {center, sol.x[2 * d]};
}

bool contains_point(const Polytope& p, const Point& x, double tol) {
  if (x.dim() != p.dim()) fail(ErrorCode::DimensionMismatch, "contains_point: dimension mismatch");
  if (p.affine_dim() == 0) return distance(x, p.vertices().front()) <= tol;
  if (p.degenerate() && p.distance_to_span(x) > tol) return false;
  for (const Halfspace& h : p.facets())
    if (dot(h.normal, x) > h.offset + tol) return false;
  return true;
}

double hausdorff_distance(const Polytope& a, const Polytope& b) {
  double h = 0.0;
  for (const Point& v : a.vertices()) h = std::max(h, b.distance(v));
  for (const Point& v : b.vertices()) h = std::max(h, a.distance(v));
  return h;
}

double diameter(std::span<const Point> points) {
  if (points.size() < 2) return 0.0;
  const Polytope hull = convex_hull(points, points.front().dim());
  const auto& v = hull.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, distance(v[i], v[j]));
  return best;
}

// Closest point on a triangle (Ericson, Real-Time Collision Detection 5.1.5).
double point_triangle_distance(const Point& p, const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return distance(p, a);
  const Point bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return distance(p, b);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return distance(p, a + (d1 / (d1 - d3)) * ab);
  const Point cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return distance(p, c);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return distance(p, a + (d2 / (d2 - d6)) * ac);
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return distance(p, b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b));
  const double denom = 1.0 / (va + vb + vc);
  return distance(p, a + ab * (vb * denom) + ac * (vc * denom));
}

}  // namespace fracsum

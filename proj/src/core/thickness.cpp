#include "thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "parallel.hpp"
#include "point_index.hpp"
#include "random.hpp"

namespace fracsum {

using boost::multiprecision::cpp_int;

const char* bound_kind_name(BoundKind k) noexcept {
  return k == BoundKind::Empirical ? "EMPIRICAL" : "CERTIFIED_SELF_SIMILAR";
}

namespace {

// c = num / den exactly: the attached rational, else the binary value.
std::pair<cpp_int, cpp_int> exact_fraction(const ExactReal& c) {
  if (c.exact) return {cpp_int(c.exact->num), cpp_int(c.exact->den)};
  int ex = 0;
  const double f = std::frexp(c.value, &ex);
  const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
  const int e = ex - 53;  // c = mant * 2^e
  if (e >= 0) return {cpp_int(mant) << e, cpp_int(1)};
  return {cpp_int(mant), cpp_int(1) << -e};
}

void require_c(const ExactReal& c) {
  if (!(c.value > 0.0 && c.value <= 1.0)) fail(ErrorCode::InvalidC, "c must satisfy 0 < c <= 1");
}

std::uint64_t to_u64(const cpp_int& v, const char* what) {
  if (v > cpp_int(std::numeric_limits<std::uint64_t>::max()))
    fail(ErrorCode::InvalidC, std::string(what) + " exceeds the 64-bit range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t packing_count(const ExactReal& c, int dim) {
  if (!(c.value > 0.0)) fail(ErrorCode::InvalidC, "packing count needs c > 0");
  const auto [p, q] = exact_fraction(c);
  // ((4 + p/q) / (p/q))^d = ((4q + p) / p)^d
  cpp_int num = 1, den = 1;
  for (int i = 0; i < dim; ++i) {
    num *= 4 * q + p;
    den *= p;
  }
  return to_u64(num / den, "packing count");
}

std::uint64_t sum_threshold(const ExactReal& c) {
  require_c(c);
  const auto [p, q] = exact_fraction(c);
  // n > 2048 q^3 / p^3 + 1  <=>  n >= floor(2048 q^3 / p^3) + 2
  const cpp_int v = (2048 * q * q * q) / (p * p * p);
  return to_u64(v + 2, "sum threshold");
}

ThicknessBound estimate_thickness(const CylinderCover& cover, const EstimateOptions& opts) {
  const auto& pts = cover.inner_points;
  if (pts.empty()) fail(ErrorCode::DegenerateSet, "thickness estimate of an empty cover");
  const int d = cover.dim;
  if (opts.radii_per_decade < 1) fail(ErrorCode::InvalidArgument, "radii per decade must be positive");
  const Polytope hull = convex_hull(pts, d);
  const double diam = diameter(hull.vertices());
  if (!(diam > kTolGeo)) fail(ErrorCode::DegenerateSet, "all inner points coincide");

  std::vector<Point> centers = hull.vertices();
  Rng rng(opts.seed);
  const std::size_t extra = std::min(opts.sampled_centers, pts.size());
  for (std::size_t i = 0; i < extra; ++i) centers.push_back(pts[rng.index(pts.size())]);

  const double r_min = std::max(10.0 * cover.eps, diam * std::ldexp(1.0, -12));
  const double step = std::pow(10.0, -1.0 / opts.radii_per_decade);
  std::vector<double> radii;
  for (double r = diam; r >= r_min * (1.0 - 1e-12); r *= step) radii.push_back(r);

  const PointIndex index(pts);
  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::size_t center = 0;
    std::size_t radius = 0;
  };
  std::vector<Best> per_center(centers.size());
  parallel_for(centers.size(), opts.workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = 0; j < radii.size(); ++j) {
        const auto local = index.ball(centers[i], radii[j]);
        const double rho = chebyshev_center(convex_hull(local, d)).radius;
        const double v = rho / radii[j];
        if (v < per_center[i].value) per_center[i] = {v, i, j};
      }
  });

  // Deterministic reduction: first minimum in (centre, radius) order.
  Best best;
  for (const Best& b : per_center)
    if (b.value < best.value) best = b;

  ThicknessBound out;
  out.kind = BoundKind::Empirical;
  out.value = std::clamp(best.value, 0.0, 1.0);
  out.centers = centers.size();
  out.radii = radii.size();
  out.r_max = radii.front();
  out.r_min = radii.back();
  out.eps = cover.eps;
  out.argmin_x = centers[best.center];
  out.argmin_r = radii[best.radius];
  return out;
}

ThicknessBound certified_self_similar_bound(const Ifs& ifs, const CylinderCover& cover) {
  if (!ifs.similitude()) fail(ErrorCode::NotSimilitude, "certified bound needs similitude maps");
  if (cover.depth < 1) fail(ErrorCode::PreconditionViolated, "certified bound needs cover depth >= 1");
  ThicknessBound out;
  out.kind = BoundKind::CertifiedSelfSimilar;
  out.rho_min = ifs.rho_min().value;

  const Polytope hull = convex_hull(cover.inner_points, cover.dim);
  out.r0 = chebyshev_center(hull).radius;

  std::vector<Point> centers;
  double rmax = 0.0;
  centers.reserve(cover.outer_balls.size());
  for (const Ball& b : cover.outer_balls) {
    centers.push_back(b.center);
    rmax = std::max(rmax, b.radius);
  }
  out.diam_ub = diameter(convex_hull(centers, cover.dim).vertices()) + 2.0 * rmax;

  if (out.r0 <= 0.0 || out.diam_ub <= 0.0) {
    out.flat_sample = true;
    out.value = 0.0;
    return out;
  }
  out.value = std::min(1.0, out.rho_min * out.r0 / out.diam_ub);
  return out;
}

std::vector<Point> PackingWitness::points() const {
  std::vector<Point> out = selection;
  if (!out.empty())
    while (out.size() < padded_count) out.push_back(out.back());
  return out;
}

PackingWitness extract_packing_witness(const CylinderCover& cover, const Point& x, double r, double c) {
  return extract_packing_witness(PointIndex(cover.inner_points), cover.dim, cover.eps, x, r, c);
}

PackingWitness extract_packing_witness(const PointIndex& index, int dim, double eps, const Point& x,
                                       double r, double c) {
  if (!(c > 0.0)) fail(ErrorCode::InvalidC, "packing witness needs c > 0");
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "packing witness needs r > 0");
  if (x.dim() != dim) fail(ErrorCode::DimensionMismatch, "packing witness: centre dimension");

  const auto local = index.ball(x, r);
  if (local.empty() || index.nearest_within(x, kTolGeo * 2) > kTolGeo)
    fail(ErrorCode::PreconditionViolated, "packing witness centre is not an inner point");

  PackingWitness w;
  w.center_x = x;
  w.radius_r = r;
  w.c = c;
  const double sep = c * r / 2.0;
  for (const Point& p : local) {
    const bool far = std::all_of(w.selection.begin(), w.selection.end(),
                                 [&](const Point& q) { return distance(p, q) >= sep; });
    if (far) w.selection.push_back(p);
  }
  w.padded_count = packing_count(ExactReal::from_double(c), dim);
  if (w.selection.size() > w.padded_count)
    fail(ErrorCode::InvariantViolated, "separated set larger than the packing bound");

  w.inscribed = chebyshev_center(convex_hull(w.selection, dim));
  const double need = c * r / 2.0 - 2.0 * eps;
  if (w.inscribed.radius < need)
    fail(ErrorCode::WitnessFailed, "witness hull radius " + std::to_string(w.inscribed.radius) +
                                       " below c r / 2 - 2 eps = " + std::to_string(need));
  return w;
}

bool witness_ball_sampled(const PackingWitness& w, double radius, std::uint64_t seed, int samples) {
  if (w.selection.empty()) return false;
  const Polytope hull = convex_hull(w.selection, w.center_x.dim());
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!contains_point(hull, rng.in_ball(w.inscribed.center, radius))) return false;
  return true;
}

}  // namespace fracsum

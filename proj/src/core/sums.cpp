#include "sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "point_index.hpp"
#include "thickness.hpp"

namespace fracsum {

namespace {

bool close_ratio(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::uint64_t theorem71_threshold(const Ifs& ifs) {
  const ExactReal rho = ifs.rho_min();
  const auto ell = static_cast<std::int64_t>(ifs.size());
  if (rho.exact) {
    // 1 + ceil(l q / p)
    const std::int64_t p = rho.exact->num, q = rho.exact->den;
    return static_cast<std::uint64_t>(1 + (ell * q + p - 1) / p);
  }
  // Without an exact ratio, l / rho within 1e-9 of an integer is taken as that integer.
  const double x = static_cast<double>(ell) / rho.value;
  const double r = std::round(x);
  const double c = std::abs(x - r) <= 1e-9 * x ? r : std::ceil(x);
  return static_cast<std::uint64_t>(1.0 + c);
}

std::size_t WordFamilyTuple::total_words() const noexcept {
  std::size_t t = 0;
  for (const auto& f : families) t += f.size();
  return t;
}

WordFamilyTuple expand_word_families(const Ifs& ifs, std::size_t n, std::size_t steps) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "need at least one word family");
  const double rho_min = ifs.rho_min().value;
  WordFamilyTuple t;
  t.families.assign(n, std::vector<Word>{Word{}});

  const auto update_stats = [&] {
    t.min_ratio = std::numeric_limits<double>::infinity();
    t.max_ratio = 0.0;
    for (const auto& fam : t.families)
      for (const Word& w : fam) {
        const double r = word_ratio(ifs, w);
        t.min_ratio = std::min(t.min_ratio, r);
        t.max_ratio = std::max(t.max_ratio, r);
      }
    if (t.min_ratio < rho_min * t.max_ratio * (1.0 - 1e-12))
      fail(ErrorCode::InvariantViolated, "comparability invariant broken at step " + std::to_string(t.step));
  };
  update_stats();

  for (; t.step < steps;) {
    std::size_t best_f = 0, best_i = 0;
    double best_r = -1.0;
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t i = 0; i < t.families[f].size(); ++i) {
        const Word& w = t.families[f][i];
        const double r = word_ratio(ifs, w);
        if (best_r < 0.0 || (r > best_r && !close_ratio(r, best_r))) {
          best_r = r;
          best_f = f;
          best_i = i;
        } else if (close_ratio(r, best_r) && w < t.families[best_f][best_i]) {
          // Families are scanned in index order, so equal words keep the smaller index.
          best_f = f;
          best_i = i;
        }
      }
    auto& fam = t.families[best_f];
    const Word chosen = fam[best_i];
    fam.erase(fam.begin() + static_cast<std::ptrdiff_t>(best_i));
    for (std::uint32_t letter = 0; letter < ifs.size(); ++letter) {
      Word w = chosen;
      w.push_back(letter);
      fam.push_back(std::move(w));
    }
    ++t.step;
    update_stats();
  }
  return t;
}

SumIdentityReport verify_theorem71(const Ifs& ifs, std::uint64_t n, int depth, double delta,
                                   const Theorem71Options& opts) {
  if (!ifs.similitude() || !ifs.rotation_free())
    fail(ErrorCode::NotSimilitude, "the sum identity needs rotation-free similitudes x -> rho x + a");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  const std::uint64_t threshold = theorem71_threshold(ifs);
  if (n < threshold && !opts.force)
    fail(ErrorCode::ThresholdNotMet,
         "n = " + std::to_string(n) + " is below the threshold " + std::to_string(threshold));

  const int d = ifs.dim();
  const RasterOptions ropts{opts.workers, opts.max_bytes};
  const CylinderCover cover = expand_cover(ifs, depth, {opts.budget, opts.workers, false});
  const GridSpec grid = grid_for_box(bounding_box(cover.inner_points), delta);
  const Raster inner = rasterize_inner(cover.inner_points, grid);
  const Raster sum = n_fold_sum(inner, n, ropts);

  const Polytope target = convex_hull(fixed_points(ifs), d).scaled(static_cast<double>(n));
  Box box = bounding_box(target.vertices());
  for (int a = 0; a < d; ++a) {
    box.lo[a] = std::min(box.lo[a], sum.origin()[a]);
    box.hi[a] = std::max(box.hi[a], sum.origin()[a] + static_cast<double>(sum.dims()[a] - 1) * delta);
  }
  const GridSpec tgrid = aligned_grid(box, delta, sum.origin());
  const double h = 0.5 * delta * std::sqrt(static_cast<double>(d));
  const Raster target_inner = rasterize_polytope_inner(target, tgrid);
  const Raster target_outer = rasterize_polytope_outer(target, tgrid, std::max(h, sum.slack()) + kTolGeo);

  SumIdentityReport rep;
  rep.n = n;
  rep.depth = depth;
  rep.informational = n < threshold;
  rep.d_H_measured = hausdorff_distance(sum, target_inner, ropts);
  const double sd = std::sqrt(static_cast<double>(d));
  rep.tolerance = static_cast<double>(n) * cover.eps + static_cast<double>(n) * delta * sd + delta * sd;
  rep.pass = rep.d_H_measured <= rep.tolerance;
  rep.containment = contains_raster(target_outer, sum);
  rep.details = {
      {"threshold", static_cast<double>(threshold)},
      {"delta", delta},
      {"eps", cover.eps},
      {"inner_points", static_cast<double>(cover.inner_points.size())},
      {"inner_slack", inner.slack()},
      {"sum_slack", sum.slack()},
      {"sum_cells", static_cast<double>(sum.count())},
      {"target_inner_cells", static_cast<double>(target_inner.count())},
      {"target_outer_cells", static_cast<double>(target_outer.count())},
      {"outer_margin", std::max(h, sum.slack()) + kTolGeo},
  };
  return rep;
}

double invariant_region_margin(const Ifs& ifs, const Polytope& p) {
  if (ifs.dim() != p.dim()) fail(ErrorCode::DimensionMismatch, "invariant region: dimension mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  for (const AffineMap& f : ifs.maps())
    for (const Point& v : p.vertices()) {
      const Point image = f(v);
      if (p.degenerate()) {
        worst = std::max(worst, p.distance(image));
        continue;
      }
      for (const Halfspace& hs : p.facets()) worst = std::max(worst, dot(hs.normal, image) - hs.offset);
    }
  return kTolGeo - worst;
}

bool verify_invariant_region(const Ifs& ifs, const Polytope& p) {
  for (const AffineMap& f : ifs.maps())
    for (const Point& v : p.vertices())
      if (!contains_point(p, f(v))) return false;
  return true;
}

Ifs example73_ifs() {
  const ExactReal quarter = ExactReal::from_rational(Rational::make(1, 4));
  const Matrix id = Matrix::identity(2);
  const Matrix rot = rotation_2d(-90.0);
  // phi_3(x) = R (x - (1,0)) / 4 = R x / 4 - R (1,0) / 4
  const Point r10 = rot.apply(Point{1.0, 0.0});
  return Ifs({
      AffineMap::similitude(quarter, id, Point{0.75, 0.0}),
      AffineMap::similitude(quarter, id, Point{0.0, 0.75}),
      AffineMap::similitude(quarter, rot, Point{-0.25 * r10[0], -0.25 * r10[1]}),
  });
}

Polytope example73_triangle() {
  const std::vector<Point> v{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return convex_hull(v, 2);
}

bool NonMembershipCertificate::valid() const noexcept {
  return steps.size() == 4 &&
         std::all_of(steps.begin(), steps.end(), [](const CertificateStep& s) { return s.margin > 0.0; });
}

NonMembershipCertificate build_certificate_ex73(std::uint64_t n, int depth, unsigned workers) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "certificate needs n >= 2");
  const Ifs ifs = example73_ifs();
  const Polytope tri = example73_triangle();

  NonMembershipCertificate cert;
  cert.point = Point{0.5, 0.0};
  cert.n = n;
  cert.depth = depth;

  // 1. phi_i(T) inside T, so E is inside T.
  const double m1 = invariant_region_margin(ifs, tri);
  cert.steps.push_back({"invariant-region", m1, "phi_i(T) in T for i = 1, 2, 3; hence E in T"});

  // 2. T lies in the closed upper half plane.
  double min_y = std::numeric_limits<double>::infinity();
  for (const Point& v : tri.vertices()) min_y = std::min(min_y, v[1]);
  cert.steps.push_back({"half-plane", kTolGeo + min_y,
                        "min y over T = " + fmt(min_y) + "; a sum of points of E with total y = 0 has every y = 0"});

  // 3. E on the x-axis lies in [-eta', eta'] u [3/4 - eta', 1 + eta'].
  const CylinderCover cover = expand_cover(ifs, depth, {CoverOptions{}.budget, workers, false});
  cert.eta = cover.eps;
  double eta_prime = 0.0;
  for (const Ball& b : cover.outer_balls) {
    if (std::abs(b.center[1]) > cert.eta + b.radius) continue;
    ++cert.slice_balls;
    const double lo = b.center[0] - b.radius, hi = b.center[0] + b.radius;
    const double near_zero = std::max(-lo, hi);
    const double near_band = std::max(0.75 - lo, hi - 1.0);
    eta_prime = std::max(eta_prime, std::min(near_zero, near_band));
  }
  cert.eta_prime = eta_prime;
  cert.steps.push_back({"axis-slice", 0.75 - 2.0 * eta_prime,
                        std::to_string(cert.slice_balls) + " balls meet |y| <= " + fmt(cert.eta) +
                            "; projections lie in [-eta', eta'] u [3/4 - eta', 1 + eta'] with eta' = " +
                            fmt(eta_prime)});

  // 4. n terms, j of them from the band: sums lie in [3j/4 - n eta', j + n eta'].
  const double ne = static_cast<double>(n) * eta_prime;
  double m4 = std::numeric_limits<double>::infinity();
  for (std::uint64_t j = 0; j <= n; ++j) {
    const double lo = 0.75 * static_cast<double>(j) - ne;
    const double hi = static_cast<double>(j) + ne;
    const double gap = 0.5 < lo ? lo - 0.5 : (0.5 > hi ? 0.5 - hi : -std::min(0.5 - lo, hi - 0.5));
    m4 = std::min(m4, gap);
    if (lo > 0.5) break;
  }
  cert.steps.push_back({"interval-sumset", m4,
                        "1/2 avoids [3j/4 - n eta', j + n eta'] for j = 0.." + std::to_string(n)});
  return cert;
}

NonMembershipCertificate certify_nonmembership_ex73(std::uint64_t n, int depth, unsigned workers) {
  NonMembershipCertificate cert = build_certificate_ex73(n, depth, workers);
  for (std::size_t i = 0; i < cert.steps.size(); ++i)
    if (!(cert.steps[i].margin > 0.0))
      fail(ErrorCode::CertificateFailed, "step " + std::to_string(i + 1) + " (" + cert.steps[i].name +
                                             ") has margin " + fmt(cert.steps[i].margin));
  return cert;
}

namespace {

// Cells whose centre lies within radius + margin of some ball centre, plus
// the cell of every centre. margin 0 gives INNER, half a cell diagonal OUTER.
Raster rasterize_ball_union(std::span<const Ball> balls, const GridSpec& grid, double margin, RasterMode mode,
                            std::uint64_t max_bytes) {
  Raster r(grid, mode, 0.0, max_bytes);
  for (const Ball& b : balls) {
    const Index3 c = grid.nearest(b.center);
    if (!grid.in_range(c)) fail(ErrorCode::BoxTooSmall, "ball centre outside the probe grid");
    r.set(c);
    Index3 lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) {
      const double reach = b.radius + margin;
      lo[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((b.center[a] - reach - grid.origin[a]) / grid.cell)));
      hi[a] = std::min<std::int64_t>(grid.dims[a] - 1,
                                     static_cast<std::int64_t>(std::ceil((b.center[a] + reach - grid.origin[a]) / grid.cell)));
    }
    for (std::int64_t k = lo[2]; k <= hi[2]; ++k)
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j)
        for (std::int64_t i = lo[0]; i <= hi[0]; ++i)
          if (distance(grid.center({i, j, k}), b.center) <= b.radius + margin) r.set({i, j, k});
  }
  return r;
}

struct Hierarchy {
  std::vector<Ball> level1;  // B(z_j, s1)
  std::vector<Ball> level2;  // B(z_{jj'}, s2)
  std::size_t witnesses = 0;
};

Hierarchy build_hierarchy(const CylinderCover& cover, double c, double r0, double s1, double s2,
                          unsigned workers) {
  const PointIndex index(cover.inner_points);
  const double rho = c / 4.0;

  // x_empty: the inner point nearest the centroid.
  Point centroid(cover.dim);
  for (const Point& p : cover.inner_points) centroid += p;
  centroid *= 1.0 / static_cast<double>(cover.inner_points.size());
  const Point x0 = *std::min_element(cover.inner_points.begin(), cover.inner_points.end(),
                                     [&](const Point& a, const Point& b) { return distance(a, centroid) < distance(b, centroid); });

  const auto w0 = extract_packing_witness(index, cover.dim, cover.eps, x0, r0 / 2.0, c);
  const std::vector<Point>& x1 = w0.selection;

  std::vector<std::vector<Ball>> l1(x1.size()), l2(x1.size());
  std::vector<std::size_t> counts(x1.size(), 0);
  parallel_for(x1.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const auto w1 = extract_packing_witness(index, cover.dim, cover.eps, x1[j], rho * r0 / 2.0, c);
      l1[j].push_back({w1.inscribed.center, s1});
      for (const Point& x2 : w1.selection) {
        const auto w2 = extract_packing_witness(index, cover.dim, cover.eps, x2, rho * rho * r0 / 2.0, c);
        l2[j].push_back({w2.inscribed.center, s2});
      }
      counts[j] = 1 + w1.selection.size();
    }
  });

  Hierarchy h;
  h.witnesses = 1;
  for (std::size_t j = 0; j < x1.size(); ++j) {
    h.level1.insert(h.level1.end(), l1[j].begin(), l1[j].end());
    h.level2.insert(h.level2.end(), l2[j].begin(), l2[j].end());
    h.witnesses += counts[j];
  }
  return h;
}

}  // namespace

SumIdentityReport theorem12_smallcase(const std::vector<CylinderCover>& sets, double c, std::uint64_t n,
                                      const Theorem12Options& opts) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "probe needs n >= 2");
  if (!(c > 0.0 && c <= 1.0)) fail(ErrorCode::InvalidC, "c must satisfy 0 < c <= 1");
  if (sets.size() != 1 && sets.size() != n)
    fail(ErrorCode::InvalidArgument, "probe needs n covers or a single shared cover");
  const int d = sets.front().dim;

  double r0 = std::numeric_limits<double>::infinity();
  for (const CylinderCover& s : sets) {
    if (s.dim != d) fail(ErrorCode::DimensionMismatch, "probe covers differ in dimension");
    r0 = std::min(r0, diameter(convex_hull(s.inner_points, d).vertices()));
  }
  if (!(r0 > 0.0)) fail(ErrorCode::WitnessFailed, "probe set is a single point");
  const double rho = c / 4.0;
  const double s1 = rho * c * r0 / 16.0;
  const double s2 = rho * s1;

  std::vector<Hierarchy> hs;
  for (const CylinderCover& s : sets) hs.push_back(build_hierarchy(s, c, r0, s1, s2, opts.workers));

  // One grid per summand, all aligned to the origin; cell s1/2 unless capped.
  double delta = s1 / 2.0;
  std::vector<Box> boxes;
  for (const Hierarchy& h : hs) {
    std::vector<Point> centers;
    for (const Ball& b : h.level1) centers.push_back(b.center);
    for (const Ball& b : h.level2) centers.push_back(b.center);
    Box box = bounding_box(centers);
    for (int a = 0; a < d; ++a) {
      box.lo[a] -= s1;
      box.hi[a] += s1;
      delta = std::max(delta, (box.hi[a] - box.lo[a]) / static_cast<double>(opts.max_cells_per_axis));
    }
    boxes.push_back(box);
  }
  const RasterOptions ropts{opts.workers, opts.max_bytes};
  const double h = 0.5 * delta * std::sqrt(static_cast<double>(d));
  Raster h1, h2;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t k = sets.size() == 1 ? 0 : static_cast<std::size_t>(i);
    const GridSpec g = aligned_grid(boxes[k], delta, Point(d));
    // H_1 cells must lie in H_2 itself; H_2 is covered from outside so the
    // check is at raster resolution, as for the sum identity.
    const Raster a1 = rasterize_ball_union(hs[k].level1, g, 0.0, RasterMode::Inner, opts.max_bytes);
    const Raster a2 = rasterize_ball_union(hs[k].level2, g, h + kTolGeo, RasterMode::Outer, opts.max_bytes);
    h1 = i == 0 ? a1 : minkowski_sum(h1, a1, ropts);
    h2 = i == 0 ? a2 : minkowski_sum(h2, a2, ropts);
  }

  const std::uint64_t uncovered = uncovered_cells(h2, h1);
  SumIdentityReport rep;
  rep.n = n;
  rep.depth = 1;
  rep.d_H_measured = static_cast<double>(uncovered) / static_cast<double>(std::max<std::uint64_t>(1, h1.count()));
  rep.tolerance = 0.0;
  rep.containment = uncovered == 0;
  rep.pass = rep.containment;
  rep.informational = n < sum_threshold(ExactReal::from_double(c));
  rep.details = {
      {"c", c},
      {"rho", rho},
      {"r0", r0},
      {"s1", s1},
      {"s2", s2},
      {"delta", delta},
      {"witnesses", static_cast<double>(hs.front().witnesses)},
      {"level1_balls", static_cast<double>(hs.front().level1.size())},
      {"level2_balls", static_cast<double>(hs.front().level2.size())},
      {"h1_cells", static_cast<double>(h1.count())},
      {"h2_cells", static_cast<double>(h2.count())},
      {"uncovered_cells", static_cast<double>(uncovered)},
  };
  return rep;
}

}  // namespace fracsum

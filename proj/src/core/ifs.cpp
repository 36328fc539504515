#include "ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "random.hpp"

namespace fracsum {

Matrix Matrix::identity(int dim) { return scaled_identity(dim, 1.0); }

Matrix Matrix::scaled_identity(int dim, double s) {
  Matrix m;
  m.dim = dim;
  for (int i = 0; i < dim; ++i) m.a[i][i] = s;
  return m;
}

Point Matrix::apply(const Point& x) const {
  Point r(dim);
  for (int i = 0; i < dim; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += a[i][j] * x[j];
    r[i] = s;
  }
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r;
  r.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += a[i][k] * o.a[k][j];
      r.a[i][j] = s;
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r;
  r.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.a[i][j] = a[j][i];
  return r;
}

namespace {

// cos and sin of an angle in degrees, exact at multiples of 90.
std::pair<double, double> cos_sin_deg(double deg) {
  const double quarter = deg / 90.0;
  if (quarter == std::round(quarter) && std::abs(quarter) < 1e15) {
    const long long q = ((static_cast<long long>(quarter) % 4) + 4) % 4;
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    return {kCos[q], kSin[q]};
  }
  const double rad = deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

bool is_orthogonal(const Matrix& q) {
  const Matrix g = q.transpose() * q;
  for (int i = 0; i < q.dim; ++i)
    for (int j = 0; j < q.dim; ++j)
      if (std::abs(g.a[i][j] - (i == j ? 1.0 : 0.0)) > 1e-12) return false;
  return true;
}

// Entries in {0, +-1} with one nonzero per row: applying it is exact.
bool is_signed_permutation(const Matrix& q) {
  for (int i = 0; i < q.dim; ++i) {
    int nonzero = 0;
    for (int j = 0; j < q.dim; ++j) {
      const double v = q.a[i][j];
      if (v == 0.0) continue;
      if (std::abs(v) != 1.0) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

}  // namespace

Matrix rotation_2d(double degrees) {
  const auto [c, s] = cos_sin_deg(degrees);
  Matrix m;
  m.dim = 2;
  m.a[0] = {c, -s, 0.0};
  m.a[1] = {s, c, 0.0};
  return m;
}

Matrix rotation_3d(double z_deg, double y_deg, double x_deg) {
  const auto [cz, sz] = cos_sin_deg(z_deg);
  const auto [cy, sy] = cos_sin_deg(y_deg);
  const auto [cx, sx] = cos_sin_deg(x_deg);
  Matrix rz, ry, rx;
  rz.dim = ry.dim = rx.dim = 3;
  rz.a = {{{cz, -sz, 0.0}, {sz, cz, 0.0}, {0.0, 0.0, 1.0}}};
  ry.a = {{{cy, 0.0, sy}, {0.0, 1.0, 0.0}, {-sy, 0.0, cy}}};
  rx.a = {{{1.0, 0.0, 0.0}, {0.0, cx, -sx}, {0.0, sx, cx}}};
  return rz * ry * rx;
}

double spectral_norm(const Matrix& t) {
  Matrix m = t.transpose() * t;
  const int d = m.dim;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += m.a[p][q] * m.a[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        if (m.a[p][q] == 0.0) continue;
        const double theta = (m.a[q][q] - m.a[p][p]) / (2.0 * m.a[p][q]);
        const double tn = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tn * tn + 1.0);
        const double s = tn * c;
        for (int k = 0; k < d; ++k) {
          const double mkp = m.a[k][p], mkq = m.a[k][q];
          m.a[k][p] = c * mkp - s * mkq;
          m.a[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < d; ++k) {
          const double mpk = m.a[p][k], mqk = m.a[q][k];
          m.a[p][k] = c * mpk - s * mqk;
          m.a[q][k] = s * mpk + c * mqk;
        }
      }
  }
  double lmax = 0.0;
  for (int i = 0; i < d; ++i) lmax = std::max(lmax, m.a[i][i]);
  return std::sqrt(lmax);
}

AffineMap AffineMap::similitude(ExactReal ratio, const Matrix& orthogonal, const Point& translation) {
  if (orthogonal.dim != translation.dim())
    fail(ErrorCode::DimensionMismatch, "similitude: matrix and translation dimensions differ");
  if (!std::isfinite(ratio.value) || ratio.value <= 0.0)
    fail(ErrorCode::InvalidArgument, "similitude: ratio must be positive");
  if (!is_orthogonal(orthogonal))
    fail(ErrorCode::InvalidArgument, "similitude: rotation matrix is not orthogonal");
  AffineMap f;
  f.linear_ = orthogonal;
  for (int i = 0; i < orthogonal.dim; ++i)
    for (int j = 0; j < orthogonal.dim; ++j) f.linear_.a[i][j] *= ratio.value;
  f.translation_ = translation;
  f.ratio_ = ratio;
  // Signed permutations scale exactly by ratio.value; otherwise round up.
  f.contraction_ub_ =
      is_signed_permutation(orthogonal) ? ratio.value : spectral_norm(f.linear_) + 1e-12;
  return f;
}

AffineMap AffineMap::affine(const Matrix& linear, const Point& translation) {
  if (linear.dim != translation.dim())
    fail(ErrorCode::DimensionMismatch, "affine map: matrix and translation dimensions differ");
  AffineMap f;
  f.linear_ = linear;
  f.translation_ = translation;
  for (int i = 0; i < linear.dim; ++i)
    for (int j = 0; j < linear.dim; ++j)
      if (!std::isfinite(linear.a[i][j])) fail(ErrorCode::InvalidArgument, "affine map: non-finite entry");
  if (!translation.finite()) fail(ErrorCode::InvalidArgument, "affine map: non-finite translation");
  f.contraction_ub_ = spectral_norm(linear) + 1e-12;

  // T^T T = rho^2 I makes the map a similitude after all.
  const Matrix g = linear.transpose() * linear;
  const double r2 = g.a[0][0];
  bool conformal = r2 > 0.0;
  for (int i = 0; i < linear.dim && conformal; ++i)
    for (int j = 0; j < linear.dim; ++j)
      if (std::abs(g.a[i][j] - (i == j ? r2 : 0.0)) > 1e-12 * r2) conformal = false;
  if (conformal) f.ratio_ = ExactReal::from_double(std::sqrt(r2));
  return f;
}

Point AffineMap::operator()(const Point& x) const {
  Point y = linear_.apply(x);
  y += translation_;
  return y;
}

bool AffineMap::rotation_free() const {
  const double rho = linear_.a[0][0];
  if (!(rho > 0.0)) return false;
  for (int i = 0; i < linear_.dim; ++i)
    for (int j = 0; j < linear_.dim; ++j)
      if (std::abs(linear_.a[i][j] - (i == j ? rho : 0.0)) > 1e-15) return false;
  return true;
}

Ifs::Ifs(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) fail(ErrorCode::InvalidArgument, "IFS needs at least one map");
  dim_ = maps_.front().dim();
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].dim() != dim_) fail(ErrorCode::DimensionMismatch, "IFS maps differ in dimension");
    if (!(maps_[i].contraction_ub() < 1.0))
      fail(ErrorCode::NotContracting, "map " + std::to_string(i + 1) + " has contraction bound " +
                                          std::to_string(maps_[i].contraction_ub()) + " >= 1");
  }
}

bool Ifs::similitude() const noexcept {
  return std::all_of(maps_.begin(), maps_.end(), [](const AffineMap& f) { return f.ratio().has_value(); });
}

bool Ifs::rotation_free() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const AffineMap& f) { return f.rotation_free(); });
}

ExactReal Ifs::rho_min() const {
  if (!similitude()) fail(ErrorCode::NotSimilitude, "IFS has a map that is not a similitude");
  const ExactReal* best = &*maps_.front().ratio();
  for (const AffineMap& f : maps_)
    if (f.ratio()->value < best->value) best = &*f.ratio();
  return *best;
}

double Ifs::max_contraction() const noexcept {
  double m = 0.0;
  for (const AffineMap& f : maps_) m = std::max(m, f.contraction_ub());
  return m;
}

std::string word_string(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i] + 1);
  }
  return s + ")";
}

Point apply_word(const Ifs& ifs, const Word& w, const Point& x) {
  Point y = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) y = ifs.map(*it)(y);
  return y;
}

double word_ratio(const Ifs& ifs, const Word& w) {
  double r = 1.0;
  for (std::uint32_t letter : w) {
    const auto& ratio = ifs.map(letter).ratio();
    if (!ratio) fail(ErrorCode::NotSimilitude, "word ratio needs similitude maps");
    r *= ratio->value;
  }
  return r;
}

std::vector<Point> fixed_points(const Ifs& ifs) {
  const int d = ifs.dim();
  std::vector<Point> out;
  out.reserve(ifs.size());
  for (std::size_t m = 0; m < ifs.size(); ++m) {
    const AffineMap& f = ifs.map(m);
    // Solve (I - T) b = a with partial pivoting.
    double a[kMaxDim][kMaxDim + 1];
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - f.linear().a[i][j];
      a[i][d] = f.translation()[i];
    }
    for (int col = 0; col < d; ++col) {
      int piv = col;
      for (int r = col + 1; r < d; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-14)
        fail(ErrorCode::SingularSystem, "I - T singular for map " + std::to_string(m + 1));
      std::swap(a[piv], a[col]);
      for (int r = 0; r < d; ++r) {
        if (r == col || a[r][col] == 0.0) continue;
        const double factor = a[r][col] / a[col][col];
        for (int c = col; c <= d; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    Point b(d);
    for (int i = 0; i < d; ++i) b[i] = a[i][d] / a[i][i];
    out.push_back(b);
  }
  return out;
}

Ball root_ball(const Ifs& ifs) {
  const int d = ifs.dim();
  const auto fps = fixed_points(ifs);
  Point x0(d);
  for (const Point& b : fps) x0 += b;
  x0 *= 1.0 / static_cast<double>(fps.size());

  // |phi(x) - x0| <= ub |x - x0| + |phi(x0) - x0| <= R whenever |x - x0| <= R.
  double R = 0.0;
  for (const AffineMap& f : ifs.maps())
    R = std::max(R, distance(f(x0), x0) / (1.0 - f.contraction_ub()));

  Rng rng(0x5eed);
  for (int s = 0; s < 64; ++s) {
    const Point x = x0 + rng.unit_vector(d) * R;
    for (const AffineMap& f : ifs.maps())
      if (distance(f(x), x0) > R + kTolGeo)
        fail(ErrorCode::Internal, "root ball is not mapped into itself");
  }
  return {x0, R};
}

namespace {

void dedup_points(CylinderCover& cover) {
  std::vector<std::size_t> order(cover.inner_points.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& pts = cover.inner_points;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  std::vector<char> drop(pts.size(), 0);
  std::size_t kept = order.empty() ? 0 : order.front();
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (distance(pts[order[i]], pts[kept]) <= kTolGeo)
      drop[order[i]] = 1;
    else
      kept = order[i];
  }
  std::vector<Point> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!drop[i]) out.push_back(pts[i]);
  cover.dedup_removed = pts.size() - out.size();
  cover.inner_points = std::move(out);
}

}  // namespace

CylinderCover expand_cover(const Ifs& ifs, int depth, const CoverOptions& opts) {
  if (depth < 0) fail(ErrorCode::InvalidArgument, "cover depth must be non-negative");
  const std::uint64_t ell = ifs.size();
  std::uint64_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count * ell > opts.budget)
      fail(ErrorCode::BudgetExceeded, std::to_string(ell) + "^" + std::to_string(depth) +
                                          " words exceed the budget of " + std::to_string(opts.budget));
    count *= ell;
  }

  CylinderCover cover;
  cover.dim = ifs.dim();
  cover.depth = depth;
  cover.root = root_ball(ifs);
  cover.anchor = fixed_points(ifs).front();

  // Level by level, P_{m+1}[i l^m + j] = phi_i(P_m[j]): lexicographic word order,
  // and every level is exactly the union of the maps' images of the previous one.
  std::vector<Point> points{cover.anchor};
  std::vector<Point> centers{cover.root.center};
  std::vector<double> scales{1.0};
  for (int level = 0; level < depth; ++level) {
    const std::size_t m = points.size();
    std::vector<Point> np(m * ell), nc(m * ell);
    std::vector<double> ns(m * ell);
    parallel_for(m * ell, opts.workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t idx = b; idx < e; ++idx) {
        const AffineMap& f = ifs.map(idx / m);
        const std::size_t j = idx % m;
        np[idx] = f(points[j]);
        nc[idx] = f(centers[j]);
        ns[idx] = f.contraction_ub() * scales[j];
      }
    });
    points = std::move(np);
    centers = std::move(nc);
    scales = std::move(ns);
  }

  cover.outer_balls.reserve(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i)
    cover.outer_balls.push_back({centers[i], scales[i] * cover.root.radius});
  cover.inner_points = std::move(points);
  cover.eps = std::pow(ifs.max_contraction(), depth) * 2.0 * cover.root.radius;
  if (opts.dedup) dedup_points(cover);
  return cover;
}

CylinderCover CylinderCover::from_points(std::vector<Point> points, double eps) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "cover from an empty sample");
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "cover eps must be non-negative");
  const int d = points.front().dim();
  require_dim(points, d);
  CylinderCover c;
  c.dim = d;
  const Box box = bounding_box(points);
  const Point mid = 0.5 * (box.lo + box.hi);
  c.root = {mid, 0.5 * distance(box.lo, box.hi) + eps};
  c.anchor = points.front();
  c.outer_balls.reserve(points.size());
  for (const Point& p : points) c.outer_balls.push_back({p, eps});
  c.inner_points = std::move(points);
  c.eps = eps;
  return c;
}

}  // namespace fracsum

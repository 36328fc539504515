#include "raster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "error.hpp"
#include "parallel.hpp"

namespace fracsum {

const char* raster_mode_name(RasterMode m) noexcept { return m == RasterMode::Inner ? "INNER" : "OUTER"; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t floor_div64(std::int64_t a) { return a >= 0 ? a / 64 : -((-a + 63) / 64); }

// Bits [pos, pos + 64) of a packed row; positions outside the row read as 0.
std::uint64_t extract(const std::uint64_t* row, std::size_t wpr, std::int64_t pos) {
  const std::int64_t q = floor_div64(pos);
  const int r = static_cast<int>(pos - q * 64);
  const auto word = [&](std::int64_t i) -> std::uint64_t {
    return i >= 0 && i < static_cast<std::int64_t>(wpr) ? row[i] : 0;
  };
  const std::uint64_t lo = word(q);
  if (r == 0) return lo;
  return (lo >> r) | (word(q + 1) << (64 - r));
}

// out |= src << shift (bit shift towards higher indices).
void or_shifted(std::uint64_t* out, std::size_t wout, const std::uint64_t* src, std::size_t wsrc,
                std::int64_t shift) {
  const std::size_t q = static_cast<std::size_t>(shift / 64);
  const int r = static_cast<int>(shift % 64);
  for (std::size_t i = 0; i < wsrc && i + q < wout; ++i) {
    const std::uint64_t v = src[i];
    if (!v) continue;
    out[i + q] |= v << r;
    if (r && i + q + 1 < wout) out[i + q + 1] |= v >> (64 - r);
  }
}

double half_diagonal(int dim, double cell) { return 0.5 * cell * std::sqrt(static_cast<double>(dim)); }

// Integral cell offset of b's origin relative to a's, or MisalignedOrigins.
Index3 origin_offset(const GridSpec& a, const GridSpec& b) {
  Index3 off{0, 0, 0};
  for (int i = 0; i < a.dim; ++i) {
    const double cells = (b.origin[i] - a.origin[i]) / a.cell;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) * a.cell > kTolGeo)
      fail(ErrorCode::MisalignedOrigins, "raster origins differ by a non-integral number of cells");
    off[i] = static_cast<std::int64_t>(rounded);
  }
  return off;
}

void require_compatible(const Raster& a, const Raster& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "rasters differ in dimension");
  if (std::abs(a.cell() - b.cell()) > 1e-12 * a.cell())
    fail(ErrorCode::CellMismatch, "rasters differ in cell size");
}

// Per-row popcounts.
std::vector<std::uint32_t> row_counts(const Raster& r) {
  std::vector<std::uint32_t> c(r.rows(), 0);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const std::uint64_t* w = r.row(i);
    std::uint32_t s = 0;
    for (std::size_t k = 0; k < r.words_per_row(); ++k) s += static_cast<std::uint32_t>(std::popcount(w[k]));
    c[i] = s;
  }
  return c;
}

struct IndexBox {
  Index3 lo{0, 0, 0};
  Index3 hi{-1, -1, -1};
  bool empty() const { return hi[0] < lo[0]; }
};

IndexBox set_bounds(const Raster& r) {
  IndexBox b;
  bool any = false;
  const auto& d = r.dims();
  for (std::size_t row = 0; row < r.rows(); ++row) {
    const std::uint64_t* w = r.row(row);
    std::int64_t first = -1, last = -1;
    for (std::size_t k = 0; k < r.words_per_row(); ++k)
      if (w[k]) {
        if (first < 0) first = static_cast<std::int64_t>(k * 64) + std::countr_zero(w[k]);
        last = static_cast<std::int64_t>(k * 64) + 63 - std::countl_zero(w[k]);
      }
    if (first < 0) continue;
    const Index3 lo{first, static_cast<std::int64_t>(row) % d[1], static_cast<std::int64_t>(row) / d[1]};
    const Index3 hi{last, lo[1], lo[2]};
    if (!any) {
      b.lo = lo;
      b.hi = hi;
      any = true;
    }
    for (int i = 0; i < 3; ++i) {
      b.lo[i] = std::min(b.lo[i], lo[i]);
      b.hi[i] = std::max(b.hi[i], hi[i]);
    }
  }
  return b;
}

}  // namespace

std::uint64_t GridSpec::cell_count() const noexcept {
  return static_cast<std::uint64_t>(dims[0]) * static_cast<std::uint64_t>(dims[1]) *
         static_cast<std::uint64_t>(dims[2]);
}

Point GridSpec::center(const Index3& i) const {
  Point c(dim);
  for (int a = 0; a < dim; ++a) c[a] = origin[a] + static_cast<double>(i[a]) * cell;
  return c;
}

Index3 GridSpec::nearest(const Point& p) const {
  Index3 i{0, 0, 0};
  for (int a = 0; a < dim; ++a) i[a] = static_cast<std::int64_t>(std::llround((p[a] - origin[a]) / cell));
  return i;
}

bool GridSpec::in_range(const Index3& i) const noexcept {
  for (int a = 0; a < 3; ++a)
    if (i[a] < 0 || i[a] >= dims[a]) return false;
  return true;
}

GridSpec grid_for_box(const Box& box, double cell) {
  if (!(cell > 0.0) || !std::isfinite(cell)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  GridSpec g;
  g.dim = box.lo.dim();
  g.origin = box.lo;
  g.cell = cell;
  for (int a = 0; a < g.dim; ++a) {
    const double extent = box.hi[a] - box.lo[a];
    if (extent < 0.0) fail(ErrorCode::InvalidArgument, "box with negative extent");
    g.dims[a] = static_cast<std::int64_t>(std::llround(extent / cell)) + 1;
  }
  return g;
}

GridSpec aligned_grid(const Box& box, double cell, const Point& anchor) {
  if (!(cell > 0.0) || !std::isfinite(cell)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  GridSpec g;
  g.dim = box.lo.dim();
  g.origin = Point(g.dim);
  g.cell = cell;
  for (int a = 0; a < g.dim; ++a) {
    const auto first = static_cast<std::int64_t>(std::floor((box.lo[a] - anchor[a]) / cell)) - 1;
    const auto last = static_cast<std::int64_t>(std::ceil((box.hi[a] - anchor[a]) / cell)) + 1;
    g.origin[a] = anchor[a] + static_cast<double>(first) * cell;
    g.dims[a] = last - first + 1;
  }
  return g;
}

Raster::Raster(const GridSpec& grid, RasterMode mode, double slack, std::uint64_t max_bytes)
    : grid_(grid), mode_(mode), slack_(slack) {
  if (grid.dim < 1 || grid.dim > kMaxDim || grid.origin.dim() != grid.dim)
    fail(ErrorCode::DimensionMismatch, "raster dimension must be 1, 2 or 3");
  if (!(grid.cell > 0.0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  for (int a = 0; a < 3; ++a) {
    if (grid.dims[a] < 1 || (a >= grid.dim && grid.dims[a] != 1))
      fail(ErrorCode::InvalidArgument, "raster extents must be positive");
  }
  wpr_ = static_cast<std::size_t>((grid.dims[0] + 63) / 64);
  rows_ = static_cast<std::size_t>(grid.dims[1] * grid.dims[2]);
  const long double bytes = static_cast<long double>(wpr_) * rows_ * 8.0L;
  if (bytes > static_cast<long double>(max_bytes))
    fail(ErrorCode::AllocationLimit, "raster of " + std::to_string(static_cast<double>(bytes)) +
                                         " bytes exceeds the memory cap of " + std::to_string(max_bytes));
  bits_.assign(wpr_ * rows_, 0);
}

bool Raster::test(const Index3& i) const noexcept {
  if (!grid_.in_range(i)) return false;
  const std::size_t r = static_cast<std::size_t>(i[1] + grid_.dims[1] * i[2]);
  return (row(r)[i[0] / 64] >> (i[0] % 64)) & 1u;
}

void Raster::set(const Index3& i) noexcept {
  const std::size_t r = static_cast<std::size_t>(i[1] + grid_.dims[1] * i[2]);
  row(r)[i[0] / 64] |= std::uint64_t{1} << (i[0] % 64);
}

std::uint64_t Raster::count() const noexcept {
  std::uint64_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<Index3> Raster::set_cells() const {
  std::vector<Index3> out;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* w = row(r);
    for (std::size_t k = 0; k < wpr_; ++k)
      for (std::uint64_t v = w[k]; v; v &= v - 1)
        out.push_back({static_cast<std::int64_t>(k * 64) + std::countr_zero(v),
                       static_cast<std::int64_t>(r) % grid_.dims[1], static_cast<std::int64_t>(r) / grid_.dims[1]});
  }
  return out;
}

bool operator==(const Raster& a, const Raster& b) noexcept {
  return a.grid_.dim == b.grid_.dim && a.grid_.origin == b.grid_.origin && a.grid_.cell == b.grid_.cell &&
         a.grid_.dims == b.grid_.dims && a.mode_ == b.mode_ && a.slack_ == b.slack_ && a.bits_ == b.bits_;
}

Raster rasterize_inner(std::span<const Point> points, double delta, const Box& bbox) {
  const GridSpec g = grid_for_box(bbox, delta);
  for (const Point& p : points)
    if (p.dim() != g.dim || !bbox.contains(p))
      fail(ErrorCode::BoxTooSmall, "inner rasterization: point outside the bounding box");
  return rasterize_inner(points, g);
}

Raster rasterize_inner(std::span<const Point> points, const GridSpec& grid) {
  Raster r(grid, RasterMode::Inner);
  double slack = 0.0;
  for (const Point& p : points) {
    if (p.dim() != grid.dim) fail(ErrorCode::DimensionMismatch, "inner rasterization: point dimension");
    const Index3 i = grid.nearest(p);
    if (!grid.in_range(i)) fail(ErrorCode::BoxTooSmall, "inner rasterization: point outside the grid");
    r.set(i);
    slack = std::max(slack, distance(p, grid.center(i)));
  }
  r.set_slack(slack);
  return r;
}

Raster rasterize_outer(std::span<const Ball> balls, double delta, const Box& bbox) {
  const GridSpec g = grid_for_box(bbox, delta);
  for (const Ball& b : balls) {
    if (b.center.dim() != g.dim) fail(ErrorCode::DimensionMismatch, "outer rasterization: ball dimension");
    for (int a = 0; a < g.dim; ++a)
      if (b.center[a] - b.radius < bbox.lo[a] - kTolGeo || b.center[a] + b.radius > bbox.hi[a] + kTolGeo)
        fail(ErrorCode::BoxTooSmall, "outer rasterization: ball leaves the bounding box");
  }
  return rasterize_outer(balls, g);
}

Raster rasterize_outer(std::span<const Ball> balls, const GridSpec& grid) {
  Raster r(grid, RasterMode::Outer);
  const double h = half_diagonal(grid.dim, grid.cell);
  for (const Ball& b : balls) {
    if (b.center.dim() != grid.dim) fail(ErrorCode::DimensionMismatch, "outer rasterization: ball dimension");
    if (!(b.radius >= 0.0)) fail(ErrorCode::InvalidArgument, "outer rasterization: negative radius");
    const double reach = b.radius + h + kTolGeo;
    Index3 lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) {
      lo[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((b.center[a] - reach - grid.origin[a]) / grid.cell)));
      hi[a] = std::min<std::int64_t>(grid.dims[a] - 1,
                                     static_cast<std::int64_t>(std::ceil((b.center[a] + reach - grid.origin[a]) / grid.cell)));
      if (lo[a] > hi[a]) goto next_ball;
    }
    for (std::int64_t k = lo[2]; k <= hi[2]; ++k)
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j)
        for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
          const Index3 idx{i, j, k};
          if (distance(grid.center(idx), b.center) <= reach) r.set(idx);
        }
  next_ball:;
  }
  return r;
}

namespace {

// Range of axis-0 cell indices in row (j, k) whose centres satisfy every
// facet relaxed by `margin`; empty when lo > hi.
std::pair<std::int64_t, std::int64_t> row_interval(const Polytope& p, const GridSpec& g, std::int64_t j,
                                                   std::int64_t k, double margin) {
  double xlo = -kInf, xhi = kInf;
  const double y = g.dim > 1 ? g.origin[1] + static_cast<double>(j) * g.cell : 0.0;
  const double z = g.dim > 2 ? g.origin[2] + static_cast<double>(k) * g.cell : 0.0;
  for (const Halfspace& h : p.facets()) {
    double rest = 0.0;
    if (g.dim > 1) rest += h.normal[1] * y;
    if (g.dim > 2) rest += h.normal[2] * z;
    const double rhs = h.offset + margin - rest;
    const double n0 = h.normal[0];
    if (std::abs(n0) < 1e-15) {
      if (rhs < 0.0) return {1, 0};
    } else if (n0 > 0.0) {
      xhi = std::min(xhi, rhs / n0);
    } else {
      xlo = std::max(xlo, rhs / n0);
    }
  }
  std::int64_t lo = 0, hi = g.dims[0] - 1;
  if (xlo > -kInf) lo = std::max(lo, static_cast<std::int64_t>(std::ceil((xlo - g.origin[0]) / g.cell - 1e-12)));
  if (xhi < kInf) hi = std::min(hi, static_cast<std::int64_t>(std::floor((xhi - g.origin[0]) / g.cell + 1e-12)));
  return {lo, hi};
}

}  // namespace

Raster rasterize_polytope_inner(const Polytope& p, const GridSpec& grid) {
  if (p.dim() != grid.dim) fail(ErrorCode::DimensionMismatch, "polytope raster: dimension mismatch");
  Raster r(grid, RasterMode::Inner);
  if (!p.degenerate()) {
    for (std::int64_t k = 0; k < grid.dims[2]; ++k)
      for (std::int64_t j = 0; j < grid.dims[1]; ++j) {
        const auto [lo, hi] = row_interval(p, grid, j, k, kTolGeo);
        for (std::int64_t i = lo; i <= hi; ++i) r.set({i, j, k});
      }
    return r;
  }

  // Flat polytope: sample a lattice of spacing cell/2 on the affine span.
  const auto& v = p.vertices();
  std::vector<Point> basis;
  for (const Point& w : v) {
    if (static_cast<int>(basis.size()) == p.affine_dim()) break;
    Point u = w - v.front();
    for (const Point& b : basis) u -= dot(u, b) * b;
    if (norm(u) > 1e-9 * (1.0 + norm(w))) basis.push_back(u * (1.0 / norm(u)));
  }
  for (const Point& w : v) {
    if (static_cast<int>(basis.size()) == p.affine_dim()) break;
    Point u = w - v.front();
    for (const Point& b : basis) u -= dot(u, b) * b;
    if (norm(u) > 1e-12) basis.push_back(u * (1.0 / norm(u)));
  }
  double slack = 0.0;
  const auto mark = [&](const Point& x) {
    const Index3 i = grid.nearest(x);
    if (!grid.in_range(i)) return;
    r.set(i);
    slack = std::max(slack, distance(x, grid.center(i)));
  };
  for (const Point& w : v) mark(w);
  const double step = grid.cell / 2.0;
  const int m = static_cast<int>(basis.size());
  if (m > 0) {
    std::array<double, 2> lo{0.0, 0.0}, hi{0.0, 0.0};
    for (const Point& w : v)
      for (int a = 0; a < m; ++a) {
        const double t = dot(w - v.front(), basis[a]);
        lo[a] = std::min(lo[a], t);
        hi[a] = std::max(hi[a], t);
      }
    const auto n0 = static_cast<std::int64_t>(std::ceil((hi[0] - lo[0]) / step));
    const auto n1 = m > 1 ? static_cast<std::int64_t>(std::ceil((hi[1] - lo[1]) / step)) : 0;
    for (std::int64_t s = 0; s <= n0; ++s)
      for (std::int64_t t = 0; t <= n1; ++t) {
        Point x = v.front() + basis[0] * std::min(hi[0], lo[0] + static_cast<double>(s) * step);
        if (m > 1) x += basis[1] * std::min(hi[1], lo[1] + static_cast<double>(t) * step);
        if (contains_point(p, x)) mark(x);
      }
  }
  r.set_slack(slack);
  return r;
}

Raster rasterize_polytope_outer(const Polytope& p, const GridSpec& grid, double margin) {
  if (p.dim() != grid.dim) fail(ErrorCode::DimensionMismatch, "polytope raster: dimension mismatch");
  Raster r(grid, RasterMode::Outer);
  for (std::int64_t k = 0; k < grid.dims[2]; ++k)
    for (std::int64_t j = 0; j < grid.dims[1]; ++j) {
      const auto [lo, hi] = row_interval(p, grid, j, k, margin);
      for (std::int64_t i = lo; i <= hi; ++i)
        if (!p.degenerate() || p.distance_to_span(grid.center({i, j, k})) <= margin) r.set({i, j, k});
    }
  return r;
}

Raster minkowski_sum(const Raster& a, const Raster& b, const RasterOptions& opts) {
  require_compatible(a, b);
  if (a.mode() != b.mode()) fail(ErrorCode::ModeMismatch, "cannot sum INNER and OUTER rasters");

  GridSpec g;
  g.dim = a.dim();
  g.origin = a.origin() + b.origin();
  g.cell = a.cell();
  for (int i = 0; i < 3; ++i) g.dims[i] = a.dims()[i] + b.dims()[i] - 1;
  double slack = a.slack() + b.slack();
  if (a.mode() == RasterMode::Outer) slack += half_diagonal(g.dim, g.cell);
  Raster out(g, a.mode(), slack, opts.max_bytes);

  const auto ca = row_counts(a);
  const auto cb = row_counts(b);
  const std::int64_t a1 = a.dims()[1], b1 = b.dims()[1], o1 = g.dims[1];
  std::vector<std::size_t> a_rows;
  for (std::size_t r = 0; r < ca.size(); ++r)
    if (ca[r]) a_rows.push_back(r);

  // Each worker owns a band of destination rows, so the result is independent
  // of the worker count.
  parallel_for(out.rows(), opts.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t orow = begin; orow < end; ++orow) {
      const std::int64_t oy = static_cast<std::int64_t>(orow) % o1;
      const std::int64_t oz = static_cast<std::int64_t>(orow) / o1;
      std::uint64_t* dst = out.row(orow);
      for (std::size_t ar : a_rows) {
        const std::int64_t by = oy - static_cast<std::int64_t>(ar) % a1;
        const std::int64_t bz = oz - static_cast<std::int64_t>(ar) / a1;
        if (by < 0 || by >= b1 || bz < 0 || bz >= b.dims()[2]) continue;
        const std::size_t br = static_cast<std::size_t>(by + b1 * bz);
        if (!cb[br]) continue;
        // Shift the denser row by each set bit of the sparser one.
        const bool a_sparse = ca[ar] <= cb[br];
        const Raster& sparse = a_sparse ? a : b;
        const Raster& dense = a_sparse ? b : a;
        const std::uint64_t* sw = sparse.row(a_sparse ? ar : br);
        const std::uint64_t* dw = dense.row(a_sparse ? br : ar);
        for (std::size_t k = 0; k < sparse.words_per_row(); ++k)
          for (std::uint64_t v = sw[k]; v; v &= v - 1) {
            const std::int64_t x = static_cast<std::int64_t>(k * 64) + std::countr_zero(v);
            or_shifted(dst, out.words_per_row(), dw, dense.words_per_row(), x);
          }
      }
    }
  });
  return out;
}

Raster n_fold_sum(const Raster& a, std::uint64_t n, const RasterOptions& opts) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n-fold sum needs n >= 1");
  Raster power = a;
  Raster result;
  bool have = false;
  for (;;) {
    if (n & 1u) {
      result = have ? minkowski_sum(result, power, opts) : power;
      have = true;
    }
    n >>= 1;
    if (!n) break;
    power = minkowski_sum(power, power, opts);
  }
  return result;
}

namespace {

// Exact 1-D squared distance transform (lower envelope of parabolas) over a
// strided line; infinite samples are skipped.
void edt_line(double* f, std::size_t n, std::size_t stride, std::vector<double>& buf,
              std::vector<std::int64_t>& v, std::vector<double>& z) {
  buf.resize(n);
  v.resize(n);
  z.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) buf[i] = f[i * stride];
  std::int64_t k = -1;
  for (std::size_t q = 0; q < n; ++q) {
    if (buf[q] == kInf) continue;
    const double fq = buf[q] + static_cast<double>(q) * static_cast<double>(q);
    double s = -kInf;
    while (k >= 0) {
      const auto p = v[k];
      s = (fq - (buf[p] + static_cast<double>(p) * static_cast<double>(p))) / (2.0 * static_cast<double>(q) - 2.0 * static_cast<double>(p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = static_cast<std::int64_t>(q);
    z[k] = k == 0 ? -kInf : s;
    z[k + 1] = kInf;
  }
  if (k < 0) return;
  std::int64_t j = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[j + 1] < static_cast<double>(q)) ++j;
    const double dq = static_cast<double>(q) - static_cast<double>(v[j]);
    f[q * stride] = dq * dq + buf[v[j]];
  }
}

// Largest distance (in cells) from a set cell of `from` to the nearest set cell
// of `to`, both expressed in the frame box [lo, lo + ext).
double directed_cells(const Raster& from, const Index3& from_shift, const Raster& to, const Index3& to_shift,
                      const Index3& lo, const Index3& ext, const RasterOptions& opts) {
  const std::uint64_t total = static_cast<std::uint64_t>(ext[0]) * ext[1] * ext[2];
  if (static_cast<long double>(total) * 8.0L > static_cast<long double>(opts.max_bytes))
    fail(ErrorCode::AllocationLimit, "distance transform grid exceeds the memory cap");
  std::vector<double> f(total, kInf);
  const auto at = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
    return static_cast<std::size_t>(i + ext[0] * (j + ext[1] * k));
  };
  for (const Index3& c : to.set_cells())
    f[at(c[0] + to_shift[0] - lo[0], c[1] + to_shift[1] - lo[1], c[2] + to_shift[2] - lo[2])] = 0.0;

  const std::size_t strides[3] = {1, static_cast<std::size_t>(ext[0]), static_cast<std::size_t>(ext[0] * ext[1])};
  for (int axis = 0; axis < 3; ++axis) {
    const std::size_t n = static_cast<std::size_t>(ext[axis]);
    if (n == 1) continue;
    const std::size_t lines = total / n;
    parallel_for(lines, opts.workers, [&](std::size_t b, std::size_t e) {
      std::vector<double> buf, z;
      std::vector<std::int64_t> v;
      for (std::size_t line = b; line < e; ++line) {
        // Decompose the line number into the two coordinates other than `axis`.
        std::size_t base;
        if (axis == 0) {
          base = line * static_cast<std::size_t>(ext[0]);
        } else if (axis == 1) {
          const std::size_t i = line % static_cast<std::size_t>(ext[0]);
          const std::size_t k = line / static_cast<std::size_t>(ext[0]);
          base = i + k * strides[2];
        } else {
          base = line;
        }
        edt_line(f.data() + base, n, strides[axis], buf, v, z);
      }
    });
  }

  double worst = 0.0;
  for (const Index3& c : from.set_cells())
    worst = std::max(worst, f[at(c[0] + from_shift[0] - lo[0], c[1] + from_shift[1] - lo[1], c[2] + from_shift[2] - lo[2])]);
  return std::sqrt(worst);
}

}  // namespace

double hausdorff_distance(const Raster& a, const Raster& b, const RasterOptions& opts) {
  require_compatible(a, b);
  const IndexBox ba = set_bounds(a), bb = set_bounds(b);
  if (ba.empty() || bb.empty()) fail(ErrorCode::EmptyRaster, "Hausdorff distance of an empty raster");
  const Index3 zero{0, 0, 0};
  const Index3 shift = origin_offset(a.grid(), b.grid());
  Index3 lo, ext;
  for (int i = 0; i < 3; ++i) {
    lo[i] = std::min(ba.lo[i], bb.lo[i] + shift[i]);
    ext[i] = std::max(ba.hi[i], bb.hi[i] + shift[i]) - lo[i] + 1;
  }
  const double ab = directed_cells(a, zero, b, shift, lo, ext, opts);
  const double ba_d = directed_cells(b, shift, a, zero, lo, ext, opts);
  return std::max(ab, ba_d) * a.cell();
}

bool contains_raster(const Raster& outer, const Raster& inner) {
  require_compatible(outer, inner);
  const Index3 s = origin_offset(outer.grid(), inner.grid());
  const IndexBox ib = set_bounds(inner);
  if (ib.empty()) return true;
  for (int i = 0; i < 3; ++i)
    if (ib.lo[i] + s[i] < 0 || ib.hi[i] + s[i] >= outer.dims()[i]) return false;

  const std::int64_t in1 = inner.dims()[1], out1 = outer.dims()[1];
  const std::int64_t wfirst = floor_div64(ib.lo[0] + s[0]);
  const std::int64_t wlast = floor_div64(ib.hi[0] + s[0]);
  for (std::size_t r = 0; r < inner.rows(); ++r) {
    const std::uint64_t* iw = inner.row(r);
    bool any = false;
    for (std::size_t k = 0; k < inner.words_per_row() && !any; ++k) any = iw[k] != 0;
    if (!any) continue;
    const std::int64_t y = static_cast<std::int64_t>(r) % in1 + s[1];
    const std::int64_t z = static_cast<std::int64_t>(r) / in1 + s[2];
    const std::uint64_t* ow = outer.row(static_cast<std::size_t>(y + out1 * z));
    for (std::int64_t w = wfirst; w <= wlast; ++w)
      if (extract(iw, inner.words_per_row(), w * 64 - s[0]) & ~ow[w]) return false;
  }
  return true;
}

std::uint64_t uncovered_cells(const Raster& outer, const Raster& inner) {
  require_compatible(outer, inner);
  const Index3 s = origin_offset(outer.grid(), inner.grid());
  std::uint64_t missing = 0;
  for (const Index3& c : inner.set_cells())
    if (!outer.test({c[0] + s[0], c[1] + s[1], c[2] + s[2]})) ++missing;
  return missing;
}

std::string pbm_bytes(const Raster& r, std::int64_t z) {
  const std::int64_t w = r.dims()[0];
  const std::int64_t h = r.dims()[1];
  std::string out = "P4\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
  const std::size_t row_bytes = static_cast<std::size_t>((w + 7) / 8);
  for (std::int64_t y = h - 1; y >= 0; --y) {
    std::string line(row_bytes, '\0');
    const std::uint64_t* src = r.row(static_cast<std::size_t>(y + h * z));
    for (std::int64_t x = 0; x < w; ++x)
      if ((src[x / 64] >> (x % 64)) & 1u) line[static_cast<std::size_t>(x / 8)] |= static_cast<char>(0x80u >> (x % 8));
    out += line;
  }
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_pbm(const Raster& r, const std::filesystem::path& path) {
  std::vector<std::filesystem::path> files;
  std::vector<std::pair<std::filesystem::path, std::int64_t>> slices;
  if (r.dim() < 3) {
    slices.emplace_back(path, 0);
  } else {
    for (std::int64_t z = 0; z < r.dims()[2]; ++z) {
      auto p = path;
      p.replace_filename(path.stem().string() + "_z" + std::to_string(z) + path.extension().string());
      slices.emplace_back(p, z);
    }
  }
  for (const auto& [file, z] : slices) {
    write_file(file, pbm_bytes(r, z));
    std::string meta;
    meta += "dim=" + std::to_string(r.dim()) + "\n";
    meta += "origin=";
    for (int i = 0; i < r.dim(); ++i) meta += (i ? "," : "") + fmt17(r.origin()[i]);
    meta += "\ncell=" + fmt17(r.cell()) + "\n";
    meta += "dims=";
    for (int i = 0; i < r.dim(); ++i) meta += (i ? "," : "") + std::to_string(r.dims()[i]);
    meta += "\nmode=" + std::string(raster_mode_name(r.mode())) + "\n";
    meta += "slack=" + fmt17(r.slack()) + "\n";
    if (r.dim() == 3) meta += "slice_z=" + std::to_string(z) + "\n";
    auto meta_path = file;
    meta_path += ".meta";
    write_file(meta_path, meta);
    files.push_back(file);
    files.push_back(meta_path);
  }
  return files;
}

}  // namespace fracsum

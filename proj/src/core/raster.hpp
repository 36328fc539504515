#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "geom.hpp"
#include "point.hpp"

namespace fracsum {

// INNER: every set cell centre is within `slack` of the represented set.
// OUTER: the represented set is covered by the set cells dilated by `slack`.
enum class RasterMode { Inner, Outer };

const char* raster_mode_name(RasterMode m) noexcept;

using Index3 = std::array<std::int64_t, 3>;

/// Uniform grid geometry. Cell i has centre origin + i * cell; unused axes
/// have extent 1.
struct GridSpec {
  int dim = 0;
  Point origin;
  double cell = 0.0;
  Index3 dims{1, 1, 1};

  std::uint64_t cell_count() const noexcept;
  Point center(const Index3& i) const;
  /// Nearest cell index along each axis (may lie outside the grid).
  Index3 nearest(const Point& p) const;
  bool in_range(const Index3& i) const noexcept;
};

/// Smallest grid with origin box.lo whose cells cover box.
GridSpec grid_for_box(const Box& box, double cell);

/// Grid whose origin is congruent to `anchor` modulo the cell size and whose
/// cell centres span box (with one cell of padding on each side).
GridSpec aligned_grid(const Box& box, double cell, const Point& anchor);

struct RasterOptions {
  unsigned workers = 0;
  std::uint64_t max_bytes = std::uint64_t{2} << 30;
};

/// Packed bit-grid. Rows run along axis 0 and are word-packed LSB-first; row
/// index is j + dims[1] * k.
class Raster {
 public:
  Raster() = default;
  Raster(const GridSpec& grid, RasterMode mode, double slack = 0.0,
         std::uint64_t max_bytes = RasterOptions{}.max_bytes);

  const GridSpec& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim; }
  const Point& origin() const noexcept { return grid_.origin; }
  double cell() const noexcept { return grid_.cell; }
  const Index3& dims() const noexcept { return grid_.dims; }
  RasterMode mode() const noexcept { return mode_; }
  double slack() const noexcept { return slack_; }
  void set_slack(double s) noexcept { slack_ = s; }

  std::size_t words_per_row() const noexcept { return wpr_; }
  std::size_t rows() const noexcept { return rows_; }
  std::uint64_t* row(std::size_t r) noexcept { return bits_.data() + r * wpr_; }
  const std::uint64_t* row(std::size_t r) const noexcept { return bits_.data() + r * wpr_; }
  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

  bool test(const Index3& i) const noexcept;
  void set(const Index3& i) noexcept;
  std::uint64_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  /// Indices of all set cells, row-major.
  std::vector<Index3> set_cells() const;

  friend bool operator==(const Raster& a, const Raster& b) noexcept;

 private:
  GridSpec grid_;
  RasterMode mode_ = RasterMode::Inner;
  double slack_ = 0.0;
  std::size_t wpr_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Sets the cell containing each point. Slack is the largest distance from a
/// point to its cell centre. BoxTooSmall if a point lies outside the box.
Raster rasterize_inner(std::span<const Point> points, double delta, const Box& bbox);
Raster rasterize_inner(std::span<const Point> points, const GridSpec& grid);

/// Sets every cell whose centre is within radius + delta*sqrt(d)/2 of a ball
/// centre. BoxTooSmall if a ball leaves the box.
Raster rasterize_outer(std::span<const Ball> balls, double delta, const Box& bbox);
Raster rasterize_outer(std::span<const Ball> balls, const GridSpec& grid);

/// INNER: cells whose centre lies in p. Flat polytopes are sampled on their
/// span at spacing cell/2 and snapped, with the snap distance as slack.
Raster rasterize_polytope_inner(const Polytope& p, const GridSpec& grid);

/// OUTER: cells whose centre is within `margin` of every facet (and of the
/// span for flat polytopes); margin >= cell*sqrt(d)/2 covers p.
Raster rasterize_polytope_outer(const Polytope& p, const GridSpec& grid, double margin);

/// Bit (u + v) is set iff u is set in a and v in b.
Raster minkowski_sum(const Raster& a, const Raster& b, const RasterOptions& opts = {});

/// n-fold sum by repeated doubling.
Raster n_fold_sum(const Raster& a, std::uint64_t n, const RasterOptions& opts = {});

/// Two-sided Hausdorff distance between the set-cell centres (exact
/// Euclidean distance transform on the union grid).
double hausdorff_distance(const Raster& a, const Raster& b, const RasterOptions& opts = {});

/// True iff every set cell of inner is set in outer.
bool contains_raster(const Raster& outer, const Raster& inner);

/// Number of set cells of inner that are not set in outer.
std::uint64_t uncovered_cells(const Raster& outer, const Raster& inner);

/// Writes binary PBM images and a key=value sidecar (<image>.meta). 3-D
/// rasters become one image per z slice. Returns the files written.
std::vector<std::filesystem::path> write_pbm(const Raster& r, const std::filesystem::path& path);

/// PBM (P4) bytes of a 2-D raster or one z slice of a 3-D raster; top image
/// row is the largest y.
std::string pbm_bytes(const Raster& r, std::int64_t z = 0);

}  // namespace fracsum

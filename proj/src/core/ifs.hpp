#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "point.hpp"
#include "rational.hpp"

namespace fracsum {

/// Row-major d x d matrix, d <= 3.
struct Matrix {
  int dim = 0;
  std::array<std::array<double, kMaxDim>, kMaxDim> a{};

  static Matrix identity(int dim);
  static Matrix scaled_identity(int dim, double s);
  Point apply(const Point& x) const;
  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;
};

/// Rotation by `degrees` in the plane; multiples of 90 degrees are exact.
Matrix rotation_2d(double degrees);

/// Rz(z) * Ry(y) * Rx(x), angles in degrees; multiples of 90 are exact.
Matrix rotation_3d(double z_deg, double y_deg, double x_deg);

/// Largest singular value by cyclic Jacobi on T^T T.
double spectral_norm(const Matrix& m);

/// Contraction x -> T x + a.
class AffineMap {
 public:
  /// x -> ratio * Q x + a with Q orthogonal (a similitude with exact ratio).
  static AffineMap similitude(ExactReal ratio, const Matrix& orthogonal, const Point& translation);
  /// x -> T x + a; the contraction bound is the spectral norm rounded up by 1e-12.
  static AffineMap affine(const Matrix& linear, const Point& translation);

  Point operator()(const Point& x) const;

  int dim() const noexcept { return linear_.dim; }
  const Matrix& linear() const noexcept { return linear_; }
  const Point& translation() const noexcept { return translation_; }
  double contraction_ub() const noexcept { return contraction_ub_; }
  const std::optional<ExactReal>& ratio() const noexcept { return ratio_; }

  /// True for homotheties x -> rho x + a (no rotation or reflection).
  bool rotation_free() const;

 private:
  Matrix linear_;
  Point translation_;
  double contraction_ub_ = 0.0;
  std::optional<ExactReal> ratio_;
};

/// Finite family of contractions on R^d.
class Ifs {
 public:
  /// Throws NotContracting naming the first map with contraction bound >= 1.
  Ifs(std::vector<AffineMap> maps);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return maps_.size(); }
  const AffineMap& map(std::size_t i) const { return maps_.at(i); }
  const std::vector<AffineMap>& maps() const noexcept { return maps_; }

  bool similitude() const noexcept;
  bool rotation_free() const;
  /// Minimum exact ratio; throws NotSimilitude for non-similitude systems.
  ExactReal rho_min() const;
  double max_contraction() const noexcept;

 private:
  std::vector<AffineMap> maps_;
  int dim_ = 0;
};

/// Word over the alphabet {0, ..., l-1}; the empty word is the identity.
/// Letters are stored 0-based and printed 1-based.
using Word = std::vector<std::uint32_t>;

std::string word_string(const Word& w);

/// phi_{w_1} o ... o phi_{w_n} (x): the last letter is applied first.
Point apply_word(const Ifs& ifs, const Word& w, const Point& x);

/// Product of the exact ratios along w (1 for the empty word).
double word_ratio(const Ifs& ifs, const Word& w);

/// One fixed point per map; throws SingularSystem if I - T is singular.
std::vector<Point> fixed_points(const Ifs& ifs);

/// Ball B with phi_i(B) inside B for every map, centred at the mean fixed point.
Ball root_ball(const Ifs& ifs);

struct CoverOptions {
  std::uint64_t budget = 10'000'000;
  unsigned workers = 0;
  bool dedup = false;
};

/// Depth-k approximation of the attractor E: inner points phi_I(z0) in E for
/// every word of length k (lexicographic), outer balls phi_I(B0) covering E,
/// and eps bounding the Hausdorff distance between inner points and E.
struct CylinderCover {
  int dim = 0;
  int depth = 0;
  std::vector<Point> inner_points;
  std::vector<Ball> outer_balls;
  double eps = 0.0;
  Ball root;
  Point anchor;
  std::size_t dedup_removed = 0;

  /// Cover from an arbitrary finite sample of a set with a known Hausdorff
  /// bound eps; each sample point becomes an outer ball of radius eps.
  static CylinderCover from_points(std::vector<Point> points, double eps);
};

CylinderCover expand_cover(const Ifs& ifs, int depth, const CoverOptions& opts = {});

}  // namespace fracsum

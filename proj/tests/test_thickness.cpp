#include <gtest/gtest.h>

#include "ifs.hpp"
#include "random.hpp"
#include "thickness.hpp"

using namespace fracsum;

namespace {

ExactReal frac(std::int64_t p, std::int64_t q) { return ExactReal::from_rational(Rational::make(p, q)); }

Ifs cantor() {
  return Ifs({AffineMap::similitude(frac(1, 3), Matrix::identity(1), Point{0.0}),
              AffineMap::similitude(frac(1, 3), Matrix::identity(1), Point{2.0 / 3.0})});
}

Ifs square() {
  const Matrix id = Matrix::identity(2);
  return Ifs({AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.0}),
              AffineMap::similitude(frac(1, 2), id, Point{0.5, 0.0}),
              AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.5}),
              AffineMap::similitude(frac(1, 2), id, Point{0.5, 0.5})});
}

}  // namespace

TEST(SumThreshold, ExactIntegerArithmetic) {
  EXPECT_EQ(sum_threshold(frac(1, 2)), 16386u);
  EXPECT_EQ(sum_threshold(frac(1, 1)), 2050u);
  EXPECT_EQ(sum_threshold(frac(1, 6)), 442370u);
  // 2048 / (1/4)^3 + 1 = 131073 exactly; n must exceed it
  EXPECT_EQ(sum_threshold(ExactReal::from_double(0.25)), 131074u);
  // c = 3/10: 2048000 / 27 = 75851.85...
  EXPECT_EQ(sum_threshold(frac(3, 10)), 75853u);
  EXPECT_THROW(sum_threshold(frac(0, 1)), Error);
  EXPECT_THROW(sum_threshold(frac(3, 2)), Error);
}

TEST(SumThreshold, MatchesFloatingFormulaAwayFromIntegers) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng.index(40));
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(q)));
    const double bound = 2048.0 * std::pow(double(q) / double(p), 3) + 1.0;
    if (std::abs(bound - std::round(bound)) < 1e-6) continue;
    EXPECT_EQ(sum_threshold(frac(p, q)), static_cast<std::uint64_t>(std::floor(bound)) + 1) << p << "/" << q;
  }
}

TEST(PackingCount, IntegralPart) {
  EXPECT_EQ(packing_count(frac(3, 10), 2), 205u);  // (43/3)^2 = 205.4
  EXPECT_EQ(packing_count(frac(1, 1), 1), 5u);
  EXPECT_EQ(packing_count(frac(1, 2), 3), 729u);
}

TEST(Certified, CantorApproachesOneSixth) {
  const Ifs ifs = cantor();
  const ThicknessBound b = certified_self_similar_bound(ifs, expand_cover(ifs, 10));
  EXPECT_EQ(b.kind, BoundKind::CertifiedSelfSimilar);
  EXPECT_LE(b.value, 1.0 / 6.0);
  EXPECT_GE(b.value, 1.0 / 6.0 - 1e-3);
  EXPECT_THROW(certified_self_similar_bound(ifs, expand_cover(ifs, 0)), Error);
}

TEST(Certified, FlatSampleFlag) {
  // The Cantor set on the x-axis of the plane has an empty interior hull.
  const Matrix id = Matrix::identity(2);
  const Ifs flat({AffineMap::similitude(frac(1, 3), id, Point{0.0, 0.0}),
                  AffineMap::similitude(frac(1, 3), id, Point{2.0 / 3.0, 0.0})});
  const ThicknessBound b = certified_self_similar_bound(flat, expand_cover(flat, 4));
  EXPECT_TRUE(b.flat_sample);
  EXPECT_EQ(b.value, 0.0);
}

TEST(Estimate, CantorAboveCertifiedBound) {
  const ThicknessBound e = estimate_thickness(expand_cover(cantor(), 10));
  EXPECT_EQ(e.kind, BoundKind::Empirical);
  EXPECT_GE(e.value, 1.0 / 6.0 - 1e-9);
  EXPECT_LE(e.value, 0.5);
}

TEST(Estimate, SquareNearHalfDiagonalRatio) {
  const ThicknessBound e = estimate_thickness(expand_cover(square(), 6));
  EXPECT_GT(e.value, 0.33);
  EXPECT_LT(e.value, 0.45);
}

TEST(Witness, SquareSelectionsAreSeparatedAndFat) {
  const CylinderCover cover = expand_cover(square(), 6);
  const PointIndex index(cover.inner_points);
  Rng rng(8);
  const std::uint64_t N = packing_count(frac(3, 10), 2);
  for (int t = 0; t < 30; ++t) {
    const Point x = cover.inner_points[rng.index(cover.inner_points.size())];
    const double r = rng.uniform(0.1, 1.0);
    const PackingWitness w = extract_packing_witness(index, 2, cover.eps, x, r, 0.3);
    EXPECT_LE(w.selection.size(), N);
    EXPECT_EQ(w.points().size(), N);
    for (std::size_t i = 0; i < w.selection.size(); ++i) {
      EXPECT_LE(distance(w.selection[i], x), r);
      for (std::size_t j = 0; j < i; ++j) EXPECT_GE(distance(w.selection[i], w.selection[j]), 0.15 * r);
    }
    EXPECT_GE(w.inscribed.radius, 0.15 * r - 2 * cover.eps);
    EXPECT_TRUE(witness_ball_sampled(w, 0.15 * r - 2 * cover.eps, t));
  }
}

TEST(Witness, FailsOnThinSetAndNonMember) {
  const Matrix id = Matrix::identity(2);
  const Ifs flat({AffineMap::similitude(frac(1, 3), id, Point{0.0, 0.0}),
                  AffineMap::similitude(frac(1, 3), id, Point{2.0 / 3.0, 0.0})});
  const CylinderCover cover = expand_cover(flat, 5);
  try {
    extract_packing_witness(cover, cover.inner_points[0], 0.5, 0.3);
    FAIL() << "expected WitnessFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WitnessFailed);
  }
  EXPECT_THROW(extract_packing_witness(cover, Point{0.5, 0.5}, 0.5, 0.3), Error);
}

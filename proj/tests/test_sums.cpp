#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sums.hpp"
#include "thickness.hpp"

using namespace fracsum;

namespace {

ExactReal frac(std::int64_t p, std::int64_t q) { return ExactReal::from_rational(Rational::make(p, q)); }

Ifs cantor() {
  return Ifs({AffineMap::similitude(frac(1, 3), Matrix::identity(1), Point{0.0}),
              AffineMap::similitude(frac(1, 3), Matrix::identity(1), Point{2.0 / 3.0})});
}

Ifs sierpinski() {
  const Matrix id = Matrix::identity(2);
  return Ifs({AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.0}),
              AffineMap::similitude(frac(1, 2), id, Point{0.5, 0.0}),
              AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.5})});
}

}  // namespace

TEST(Threshold, ExactForRationalRatios) {
  EXPECT_EQ(theorem71_threshold(cantor()), 7u);
  EXPECT_EQ(theorem71_threshold(sierpinski()), 7u);
  // rho_min = 3/7: 1 + ceil(2 * 7 / 3) = 1 + 5
  const Ifs mixed({AffineMap::similitude(frac(3, 7), Matrix::identity(1), Point{0.0}),
                   AffineMap::similitude(frac(1, 2), Matrix::identity(1), Point{0.5})});
  EXPECT_EQ(theorem71_threshold(mixed), 6u);
}

TEST(Threshold, DoubleRatioSnapsToInteger) {
  const Ifs ifs({AffineMap::similitude(ExactReal{1.0 / 3.0, std::nullopt}, Matrix::identity(1), Point{0.0}),
                 AffineMap::similitude(ExactReal{1.0 / 3.0, std::nullopt}, Matrix::identity(1), Point{2.0 / 3.0})});
  EXPECT_EQ(theorem71_threshold(ifs), 7u);
}

TEST(WordFamilies, InvariantHoldsAndWordCountGrows) {
  const Ifs ifs({AffineMap::similitude(frac(1, 3), Matrix::identity(1), Point{0.0}),
                 AffineMap::similitude(frac(1, 2), Matrix::identity(1), Point{0.5})});
  const WordFamilyTuple t = expand_word_families(ifs, 3, 40);
  EXPECT_EQ(t.step, 40u);
  EXPECT_EQ(t.total_words(), 3u + 40u);
  EXPECT_GE(t.min_ratio, (1.0 / 3.0) * t.max_ratio * (1 - 1e-12));
}

TEST(WordFamilies, TiesPickSmallestFamilyFirst) {
  const WordFamilyTuple t = expand_word_families(cantor(), 2, 1);
  ASSERT_EQ(t.families[0].size(), 2u);
  EXPECT_EQ(t.families[1].size(), 1u);
  EXPECT_EQ(t.families[0][0], (Word{0}));
}

TEST(IntervalOracle, CantorPairSumHasNoGaps) {
  const auto c = oracle::cantor_intervals(6);
  const auto s = oracle::interval_sum(c, c);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0].first, 0.0, 1e-12);
  EXPECT_NEAR(s[0].second, 2.0, 1e-12);
}

TEST(Theorem71, CantorPassesAtThreshold) {
  const SumIdentityReport r = verify_theorem71(cantor(), 7, 6, std::pow(3.0, -6));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.containment);
  EXPECT_FALSE(r.informational);
  EXPECT_LE(r.d_H_measured, 7 * std::pow(3.0, -6) + 2 * std::pow(3.0, -6));
}

TEST(Theorem71, BelowThresholdNeedsForce) {
  try {
    verify_theorem71(cantor(), 3, 5, std::pow(3.0, -5));
    FAIL() << "expected ThresholdNotMet";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ThresholdNotMet);
  }
  Theorem71Options o;
  o.force = true;
  const SumIdentityReport r = verify_theorem71(cantor(), 3, 5, std::pow(3.0, -5), o);
  EXPECT_TRUE(r.informational);
}

TEST(Theorem71, RejectsRotations) {
  EXPECT_THROW(verify_theorem71(example73_ifs(), 100, 3, 0.01), Error);
}

TEST(Theorem71, SierpinskiSmall) {
  const SumIdentityReport r = verify_theorem71(sierpinski(), 7, 4, 1.0 / 64);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.containment);
}

TEST(Example73, InvariantRegionAndCertificates) {
  EXPECT_TRUE(verify_invariant_region(example73_ifs(), example73_triangle()));
  EXPECT_GT(invariant_region_margin(example73_ifs(), example73_triangle()), 0.0);
  const NonMembershipCertificate c = certify_nonmembership_ex73(2, 8);
  EXPECT_TRUE(c.valid());
  ASSERT_EQ(c.steps.size(), 4u);
  EXPECT_EQ(c.steps[2].name, "axis-slice");
  EXPECT_NEAR(c.steps[3].margin, 0.25 - 2 * c.eta_prime, 1e-12);
}

TEST(Example73, CoarseDepthFailsWithNamedStep) {
  const NonMembershipCertificate c = build_certificate_ex73(8, 1);
  EXPECT_FALSE(c.valid());
  try {
    certify_nonmembership_ex73(8, 1);
    FAIL() << "expected CertificateFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CertificateFailed);
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(Example73, HullMatchesTriangle) {
  const CylinderCover c = expand_cover(example73_ifs(), 8);
  const double dh = hausdorff_distance(convex_hull(c.inner_points, 2), example73_triangle());
  EXPECT_LE(dh, 2.0 * std::pow(4.0, -8) * std::sqrt(2.0));
}

TEST(Theorem12, SmallProbeReportsDetails) {
  // Coarse sample: the probe runs and reports; no verdict is asserted.
  const Matrix id = Matrix::identity(2);
  const Ifs sq({AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.0}),
                AffineMap::similitude(frac(1, 2), id, Point{0.5, 0.0}),
                AffineMap::similitude(frac(1, 2), id, Point{0.0, 0.5}),
                AffineMap::similitude(frac(1, 2), id, Point{0.5, 0.5})});
  Theorem12Options o;
  o.max_cells_per_axis = 512;
  const SumIdentityReport r = theorem12_smallcase({expand_cover(sq, 7)}, 0.3, 2, o);
  EXPECT_TRUE(r.informational);
  ASSERT_FALSE(r.details.empty());
  EXPECT_EQ(r.details.front().first, "c");
  EXPECT_THROW(theorem12_smallcase({expand_cover(sq, 7)}, 1.5, 2, o), Error);
}

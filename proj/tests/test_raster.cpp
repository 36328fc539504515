#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "raster.hpp"

using namespace fracsum;

namespace {

GridSpec unit_grid(int dim, std::int64_t w, std::int64_t h = 1, std::int64_t d = 1) {
  GridSpec g;
  g.dim = dim;
  g.origin = Point(dim);
  g.cell = 1.0;
  g.dims = {w, h, d};
  return g;
}

}  // namespace

TEST(Minkowski, MatchesNaiveOracle2d) {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const Raster a = oracle::random_raster(rng, 2, 64, rng.uniform(0.0, 0.3));
    const Raster b = oracle::random_raster(rng, 2, 64, rng.uniform(0.0, 0.3));
    ASSERT_TRUE(minkowski_sum(a, b) == oracle::minkowski(a, b)) << "trial " << t;
  }
}

TEST(Minkowski, MatchesNaiveOracle1dAnd3d) {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const int d = t % 2 ? 1 : 3;
    const Raster a = oracle::random_raster(rng, d, d == 1 ? 200 : 12, 0.2);
    const Raster b = oracle::random_raster(rng, d, d == 1 ? 200 : 12, 0.2);
    ASSERT_TRUE(minkowski_sum(a, b) == oracle::minkowski(a, b)) << "trial " << t;
  }
}

TEST(Minkowski, NFoldMatchesNaiveFold) {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const Raster a = oracle::random_raster(rng, 2, 12, 0.15);
    const std::uint64_t n = 1 + rng.index(7);
    ASSERT_TRUE(n_fold_sum(a, n) == oracle::fold(a, n)) << "trial " << t << " n=" << n;
  }
}

TEST(Minkowski, IdenticalAcrossWorkerCounts) {
  Rng rng(31);
  const Raster a = oracle::random_raster(rng, 2, 64, 0.3);
  const Raster b = oracle::random_raster(rng, 2, 64, 0.3);
  const Raster r1 = minkowski_sum(a, b, {1});
  EXPECT_TRUE(r1 == minkowski_sum(a, b, {2}));
  EXPECT_TRUE(r1 == minkowski_sum(a, b, {8}));
  EXPECT_EQ(r1.words(), minkowski_sum(a, b, {8}).words());
}

TEST(Minkowski, SlackAndModes) {
  Raster a(unit_grid(2, 4, 4), RasterMode::Inner, 0.1);
  Raster b(unit_grid(2, 4, 4), RasterMode::Inner, 0.2);
  a.set({0, 0, 0});
  b.set({1, 1, 0});
  EXPECT_DOUBLE_EQ(minkowski_sum(a, b).slack(), 0.1 + 0.2);
  Raster o1(unit_grid(2, 4, 4), RasterMode::Outer, 0.1), o2(unit_grid(2, 4, 4), RasterMode::Outer, 0.2);
  EXPECT_NEAR(minkowski_sum(o1, o2).slack(), 0.3 + std::sqrt(2.0) / 2.0, 1e-15);
  try {
    minkowski_sum(a, o1);
    FAIL() << "expected ModeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
  GridSpec g = unit_grid(2, 4, 4);
  g.cell = 0.5;
  EXPECT_THROW(minkowski_sum(a, Raster(g, RasterMode::Inner)), Error);
}

TEST(RasterHausdorff, MatchesBruteForce) {
  Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    Raster a = oracle::random_raster(rng, 2, 30, 0.05);
    Raster b = oracle::random_raster(rng, 2, 30, 0.05);
    a.set({0, 0, 0});
    b.set({0, 0, 0});
    EXPECT_NEAR(hausdorff_distance(a, b), oracle::hausdorff(a, b), 1e-12) << "trial " << t;
  }
  Raster e(unit_grid(2, 3, 3), RasterMode::Inner);
  EXPECT_THROW(hausdorff_distance(e, e), Error);
}

TEST(Rasterize, InnerSnapsToNearestCell) {
  const std::vector<Point> pts{{0.0, 0.0}, {0.26, 0.0}, {1.0, 1.0}};
  const Box box{Point{0.0, 0.0}, Point{1.0, 1.0}};
  const Raster r = rasterize_inner(pts, 0.25, box);
  EXPECT_EQ(r.count(), 3u);
  EXPECT_TRUE(r.test({1, 0, 0}));
  EXPECT_NEAR(r.slack(), 0.01, 1e-12);
  const std::vector<Point> outside{{2.0, 0.0}};
  EXPECT_THROW(rasterize_inner(outside, 0.25, box), Error);
}

TEST(Rasterize, OuterCoversBalls) {
  const std::vector<Ball> balls{{Point{0.5, 0.5}, 0.2}};
  const Box box{Point{0.0, 0.0}, Point{1.0, 1.0}};
  const Raster r = rasterize_outer(balls, 0.1, box);
  EXPECT_EQ(r.mode(), RasterMode::Outer);
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const Point p = rng.in_ball(Point{0.5, 0.5}, 0.2);
    EXPECT_TRUE(r.test(r.grid().nearest(p)));
  }
}

TEST(Rasterize, PolytopeInnerAndOuter) {
  const std::vector<Point> tri{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  const Polytope p = convex_hull(tri, 2);
  const GridSpec g = grid_for_box(Box{Point{0.0, 0.0}, Point{1.0, 1.0}}, 0.125);
  const Raster in = rasterize_polytope_inner(p, g);
  const Raster out = rasterize_polytope_outer(p, g, 0.125 * std::sqrt(2.0) / 2.0);
  EXPECT_EQ(in.count(), 45u);  // 9 + 8 + ... + 1 cell centres with x + y <= 1
  EXPECT_TRUE(contains_raster(out, in));
  EXPECT_GT(out.count(), in.count());
}

TEST(Containment, AlignedAndMisaligned) {
  Raster big(unit_grid(2, 8, 8), RasterMode::Outer);
  for (std::int64_t j = 0; j < 8; ++j)
    for (std::int64_t i = 0; i < 8; ++i) big.set({i, j, 0});
  GridSpec g = unit_grid(2, 3, 3);
  g.origin = Point{2.0, 3.0};
  Raster small(g, RasterMode::Inner);
  small.set({2, 2, 0});
  EXPECT_TRUE(contains_raster(big, small));
  small.set({0, 0, 0});
  g.origin = Point{6.0, 6.0};
  Raster edge(g, RasterMode::Inner);
  edge.set({2, 2, 0});
  EXPECT_FALSE(contains_raster(big, edge));
  EXPECT_EQ(uncovered_cells(big, edge), 1u);
  g.origin = Point{0.5, 0.0};
  try {
    contains_raster(big, Raster(g, RasterMode::Inner));
    FAIL() << "expected MisalignedOrigins";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MisalignedOrigins);
  }
}

TEST(Pbm, BitOrderAndEmptyPayload) {
  Raster r(unit_grid(2, 8, 1), RasterMode::Inner);
  r.set({0, 0, 0});
  r.set({7, 0, 0});
  EXPECT_EQ(pbm_bytes(r), std::string("P4\n8 1\n") + '\x81');
  Raster e(unit_grid(2, 10, 3), RasterMode::Inner);
  EXPECT_EQ(pbm_bytes(e), std::string("P4\n10 3\n") + std::string(6, '\0'));
}

TEST(Pbm, TopRowIsLargestY) {
  Raster r(unit_grid(2, 3, 2), RasterMode::Inner);
  r.set({2, 1, 0});
  EXPECT_EQ(pbm_bytes(r), std::string("P4\n3 2\n") + '\x20' + '\0');
}

TEST(Pbm, SidecarAndSlices) {
  const auto dir = std::filesystem::temp_directory_path() / "fracsum_pbm_test";
  std::filesystem::create_directories(dir);
  Raster r(unit_grid(3, 4, 4, 2), RasterMode::Outer, 0.5);
  r.set({1, 1, 1});
  const auto files = write_pbm(r, dir / "cube.pbm");
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[0].filename(), "cube_z0.pbm");
  std::ifstream meta(dir / "cube_z1.pbm.meta");
  std::stringstream ss;
  ss << meta.rdbuf();
  EXPECT_NE(ss.str().find("mode=OUTER"), std::string::npos);
  EXPECT_NE(ss.str().find("slack=0.5"), std::string::npos);
  EXPECT_NE(ss.str().find("dims=4,4,2"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Raster, AllocationCap) {
  GridSpec g = unit_grid(2, 1 << 20, 1 << 12);
  try {
    Raster r(g, RasterMode::Inner, 0.0, 1 << 20);
    FAIL() << "expected AllocationLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllocationLimit);
  }
}

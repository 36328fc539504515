#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fracsum/fracsum.h"

namespace {

fsum_ifs* cantor() {
  const int64_t num[] = {1, 1}, den[] = {3, 3};
  const double t[] = {0.0, 2.0 / 3.0};
  fsum_ifs* ifs = nullptr;
  EXPECT_EQ(fsum_ifs_create_similitudes(1, 2, num, den, nullptr, t, &ifs), FSUM_OK);
  return ifs;
}

}  // namespace

TEST(CApi, StatusNamesMirrorErrors) {
  EXPECT_STREQ(fsum_status_name(FSUM_OK), "Ok");
  EXPECT_STREQ(fsum_status_name(FSUM_THRESHOLD_NOT_MET), "ThresholdNotMet");
  EXPECT_STREQ(fsum_status_name(FSUM_CONFIG_INVALID), "ConfigInvalid");
  EXPECT_STREQ(fsum_status_name(static_cast<fsum_status>(99)), "Unknown");
}

TEST(CApi, IfsCoverAndThreshold) {
  fsum_ifs* ifs = cantor();
  uint64_t n = 0;
  ASSERT_EQ(fsum_ifs_sum_threshold(ifs, &n), FSUM_OK);
  EXPECT_EQ(n, 7u);
  double fp[2];
  ASSERT_EQ(fsum_ifs_fixed_points(ifs, fp, 2), FSUM_OK);
  EXPECT_NEAR(fp[1], 1.0, 1e-15);

  fsum_cover* cover = nullptr;
  ASSERT_EQ(fsum_cover_expand(ifs, 5, 0, 1, &cover), FSUM_OK);
  size_t size = 0;
  ASSERT_EQ(fsum_cover_size(cover, &size), FSUM_OK);
  EXPECT_EQ(size, 32u);
  std::vector<double> pts(size);
  EXPECT_EQ(fsum_cover_points(cover, pts.data(), 3), FSUM_INVALID_ARGUMENT);
  EXPECT_NE(std::string(fsum_last_error()).find("buffer"), std::string::npos);
  ASSERT_EQ(fsum_cover_points(cover, pts.data(), pts.size()), FSUM_OK);
  EXPECT_EQ(pts[0], 0.0);

  double bound = 0.0;
  fsum_cover* deep = nullptr;
  ASSERT_EQ(fsum_cover_expand(ifs, 10, 0, 0, &deep), FSUM_OK);
  ASSERT_EQ(fsum_thickness_certified(ifs, deep, &bound), FSUM_OK);
  EXPECT_NEAR(bound, 1.0 / 6.0, 1e-3);

  fsum_cover_destroy(deep);
  fsum_cover_destroy(cover);
  fsum_ifs_destroy(ifs);
  fsum_ifs_destroy(nullptr);
}

TEST(CApi, ErrorsCarryCodesAndMessages) {
  const int64_t num[] = {3}, den[] = {2};
  const double t[] = {0.0};
  fsum_ifs* ifs = nullptr;
  EXPECT_EQ(fsum_ifs_create_similitudes(1, 1, num, den, nullptr, t, &ifs), FSUM_NOT_CONTRACTING);
  EXPECT_EQ(ifs, nullptr);
  EXPECT_NE(std::string(fsum_last_error()).find("map 1"), std::string::npos);
  EXPECT_EQ(fsum_ifs_dim(nullptr, nullptr), FSUM_INVALID_ARGUMENT);
  uint64_t v = 0;
  EXPECT_EQ(fsum_sum_threshold(0, 1, &v), FSUM_INVALID_C);
}

TEST(CApi, Thresholds) {
  uint64_t v = 0;
  ASSERT_EQ(fsum_sum_threshold(1, 2, &v), FSUM_OK);
  EXPECT_EQ(v, 16386u);
  ASSERT_EQ(fsum_sum_threshold(1, 1, &v), FSUM_OK);
  EXPECT_EQ(v, 2050u);
  ASSERT_EQ(fsum_packing_count(3, 10, 2, &v), FSUM_OK);
  EXPECT_EQ(v, 205u);
}

TEST(CApi, RasterSums) {
  const double origin[] = {0.0, 0.0};
  const int64_t dims[] = {8, 1};
  fsum_raster* r = nullptr;
  ASSERT_EQ(fsum_raster_create(2, origin, 1.0, dims, FSUM_INNER, &r), FSUM_OK);
  const int64_t i0[] = {0, 0}, i3[] = {3, 0}, bad[] = {9, 0};
  ASSERT_EQ(fsum_raster_set(r, i0), FSUM_OK);
  ASSERT_EQ(fsum_raster_set(r, i3), FSUM_OK);
  EXPECT_EQ(fsum_raster_set(r, bad), FSUM_INVALID_ARGUMENT);

  fsum_raster* s = nullptr;
  ASSERT_EQ(fsum_raster_n_fold(r, 3, 2, &s), FSUM_OK);
  uint64_t count = 0;
  ASSERT_EQ(fsum_raster_count(s, &count), FSUM_OK);
  EXPECT_EQ(count, 4u);  // {0, 3, 6, 9}
  int64_t sd[3];
  double so[3];
  ASSERT_EQ(fsum_raster_shape(s, sd, so), FSUM_OK);
  EXPECT_EQ(sd[0], 22);
  int hit = 0;
  const int64_t i9[] = {9, 0};
  ASSERT_EQ(fsum_raster_test(s, i9, &hit), FSUM_OK);
  EXPECT_EQ(hit, 1);

  fsum_raster* outer = nullptr;
  ASSERT_EQ(fsum_raster_create(2, origin, 1.0, dims, FSUM_OUTER, &outer), FSUM_OK);
  fsum_raster* mixed = nullptr;
  EXPECT_EQ(fsum_raster_sum(r, outer, 1, &mixed), FSUM_MODE_MISMATCH);

  double dh = 0.0;
  ASSERT_EQ(fsum_raster_hausdorff(r, r, 1, &dh), FSUM_OK);
  EXPECT_EQ(dh, 0.0);

  const auto path = std::filesystem::temp_directory_path() / "fracsum_capi.pbm";
  ASSERT_EQ(fsum_raster_write_pbm(r, path.c_str()), FSUM_OK);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(bytes, std::string("P4\n8 1\n") + '\x90');
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta");

  fsum_raster_destroy(outer);
  fsum_raster_destroy(s);
  fsum_raster_destroy(r);
}

TEST(CApi, SumIdentityAndCertificate) {
  fsum_ifs* ifs = cantor();
  fsum_identity_result res{};
  EXPECT_EQ(fsum_verify_sum_identity(ifs, 3, 4, 1.0 / 81, 0, 1, &res), FSUM_THRESHOLD_NOT_MET);
  ASSERT_EQ(fsum_verify_sum_identity(ifs, 7, 5, 1.0 / 243, 0, 1, &res), FSUM_OK);
  EXPECT_EQ(res.pass, 1);
  EXPECT_EQ(res.containment, 1);
  EXPECT_LE(res.d_H, res.tolerance);
  fsum_ifs_destroy(ifs);

  double margins[4];
  int valid = 0;
  ASSERT_EQ(fsum_certify_rotation_example(2, 8, 1, margins, &valid), FSUM_OK);
  EXPECT_EQ(valid, 1);
  for (double m : margins) EXPECT_GT(m, 0.0);
  ASSERT_EQ(fsum_certify_rotation_example(8, 1, 1, margins, &valid), FSUM_OK);
  EXPECT_EQ(valid, 0);
}

TEST(CApi, RunReportsConfigErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "fracsum_capi_run";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"task": "lemma-check", "params": {"trials": 0}})";
  fsum_run_options o{};
  o.config_path = cfg.c_str();
  int code = -1;
  EXPECT_EQ(fsum_run(&o, &code), FSUM_CONFIG_INVALID);
  EXPECT_EQ(code, 2);
  EXPECT_NE(std::string(fsum_last_error()).find("params.trials"), std::string::npos);

  std::ofstream(cfg) << R"({"task": "lemma-check", "params": {"trials": 5, "dims": [2]}})";
  const std::string out = (dir / "out").string();
  o.out_dir = out.c_str();
  EXPECT_EQ(fsum_run(&o, &code), FSUM_OK);
  EXPECT_EQ(code, 0);
  EXPECT_NE(std::string(fsum_last_report()).find("status: PASS"), std::string::npos);
  std::filesystem::remove_all(dir);
}

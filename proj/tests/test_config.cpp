#include <gtest/gtest.h>

#include "config.hpp"
#include "runner.hpp"

using namespace fracsum;

namespace {

std::string diagnostic(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    return e.what();
  }
  ADD_FAILURE() << "config was accepted";
  return "";
}

const char* kCantor = R"({
  "task": "verify-thm71",
  "ifs": {"dim": 1, "maps": [
    {"type": "similitude", "ratio": "1/3", "translation": [0]},
    {"type": "similitude", "ratio": "1/3", "translation": ["2/3"]}]},
  "params": {"n": 7, "depth": 8, "delta": "1/6561"}
})";

}  // namespace

TEST(Config, ParsesExactRatiosAndDefaults) {
  const ExperimentConfig c = parse_config(kCantor);
  EXPECT_EQ(c.task, Task::VerifyThm71);
  ASSERT_TRUE(c.ifs);
  EXPECT_EQ(*c.ifs->rho_min().exact, Rational::make(1, 3));
  EXPECT_EQ(*c.params.n, 7u);
  EXPECT_EQ(*c.params.delta->exact, Rational::make(1, 6561));
  EXPECT_EQ(c.output.dir, "out");
}

TEST(Config, QuarterTurnIsExact) {
  const ExperimentConfig c = parse_config(R"({"task": "attractor",
    "ifs": {"dim": 2, "maps": [{"type": "similitude", "ratio": 0.25, "angle_deg": -90, "translation": [0, 0.25]}]},
    "params": {"depth": 2}})");
  const Matrix& m = c.ifs->map(0).linear();
  EXPECT_EQ(m.a[0][0], 0.0);
  EXPECT_EQ(m.a[0][1], 0.25);
  EXPECT_EQ(m.a[1][0], -0.25);
}

TEST(Config, SyntaxErrorNamesLine) {
  const std::string d = diagnostic("{\n  \"task\": \"attractor\",\n  \"ifs\": [1,,2]\n}");
  EXPECT_NE(d.find("line 3"), std::string::npos) << d;
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_NE(diagnostic(R"({"task": "lemma-check", "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "lemma-check", "params": {"depth": 3}})").find("params.depth"),
            std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "attractor", "ifs": {"dim": 1, "maps": [
    {"type": "similitude", "ratio": 0.5, "translation": [0], "skew": 1}]}, "params": {"depth": 1}})")
                .find("ifs.maps[1].skew"),
            std::string::npos);
}

TEST(Config, RatioAtLeastOneNamesMap) {
  const std::string d = diagnostic(R"({"task": "attractor", "ifs": {"dim": 1, "maps": [
    {"type": "similitude", "ratio": 0.5, "translation": [0]},
    {"type": "similitude", "ratio": "3/2", "translation": [1]}]}, "params": {"depth": 1}})");
  EXPECT_NE(d.find("ifs.maps[2].ratio"), std::string::npos) << d;
  EXPECT_NE(d.find("map 2"), std::string::npos) << d;
}

TEST(Config, AffineMustContract) {
  const std::string d = diagnostic(R"({"task": "attractor", "ifs": {"dim": 2, "maps": [
    {"type": "affine", "matrix": [[1.2, 0], [0, 0.1]], "translation": [0, 0]}]}, "params": {"depth": 1}})");
  EXPECT_NE(d.find("ifs.maps[1].matrix"), std::string::npos) << d;
}

TEST(Config, MissingAndMistypedFields) {
  EXPECT_NE(diagnostic(R"({"task": "verify-thm71", "ifs": {"dim": 1, "maps": [
    {"type": "similitude", "ratio": 0.5, "translation": [0]}]}, "params": {"n": 7, "depth": 3}})")
                .find("params.delta"),
            std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "sumset"})").find("ifs"), std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "nope"})").find("unknown task"), std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "lemma-check", "params": {"trials": "many"}})").find("params.trials"),
            std::string::npos);
  EXPECT_NE(diagnostic(R"({"task": "attractor", "ifs": {"dim": 2, "maps": [
    {"type": "similitude", "ratio": 0.5, "translation": [0]}]}, "params": {"depth": 1}})")
                .find("translation"),
            std::string::npos);
}

TEST(Report, EveryNumberComesFromTheRecord) {
  nlohmann::ordered_json r;
  r["task"] = "x";
  r["values"] = {{"a", 0.1}, {"b", std::vector<double>{1.5, 2.0}}};
  r["checks"] = nlohmann::ordered_json::array({{{"name", "c"}, {"measured", 3e-7}, {"pass", true}}});
  const std::string text = render_report(r);
  EXPECT_NE(text.find("a: 0.1\n"), std::string::npos) << text;
  EXPECT_NE(text.find("b: [1.5,2.0]"), std::string::npos) << text;
  EXPECT_NE(text.find("- name: c"), std::string::npos) << text;
  EXPECT_NE(text.find("measured: 3e-07"), std::string::npos) << text;
}

TEST(Report, PointsCsvUses17Digits) {
  const std::vector<Point> pts{{1.0 / 3.0, 0.5}, {2.0, 0.0}};
  EXPECT_EQ(points_csv(pts), "0.33333333333333331,0.5\n2,0\n");
}

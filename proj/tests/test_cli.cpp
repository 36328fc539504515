#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fracsum_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

CliRun fracsum(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(FRACSUM_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string config(const std::string& name) { return (fs::path(FRACSUM_CONFIGS) / name).string(); }

}  // namespace

TEST(Cli, CantorPasses) {
  const fs::path d = scratch("cantor");
  const CliRun r = fracsum("--config " + config("cantor.json") + " --out " + (d / "o").string(), d);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status: PASS"), std::string::npos) << r.out;
  for (const char* f : {"results.json", "report.txt"})
    EXPECT_TRUE(fs::exists(d / "o" / f)) << f;
  fs::remove_all(d);
}

TEST(Cli, RotationExampleWritesCertificate) {
  const fs::path d = scratch("ex73");
  const CliRun r = fracsum("--config " + config("ex73.json") + " --out " + (d / "o").string(), d);
  EXPECT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(d / "o" / "certificate.json"));
  const auto cert = nlohmann::json::parse(slurp(d / "o" / "certificate.json"));
  EXPECT_TRUE(cert.at("valid").get<bool>());
  fs::remove_all(d);
}

TEST(Cli, NonContractingMapExitsTwo) {
  const fs::path d = scratch("bad");
  std::ofstream(d / "bad.json") << R"({"task": "attractor", "ifs": {"dim": 1, "maps": [
    {"type": "similitude", "ratio": 0.5, "translation": [0]},
    {"type": "similitude", "ratio": 1.0, "translation": [1]}]}, "params": {"depth": 3}})";
  const CliRun r = fracsum("--config " + (d / "bad.json").string(), d);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("map 2"), std::string::npos) << r.err;
  fs::remove_all(d);
}

TEST(Cli, MissingConfigAndBadFlags) {
  const fs::path d = scratch("flags");
  EXPECT_EQ(fracsum("--config " + (d / "nope.json").string(), d).code, 2);
  EXPECT_EQ(fracsum("--bogus", d).code, 2);
  fs::remove_all(d);
}

TEST(Cli, OutputsIdenticalAcrossWorkerCounts) {
  const fs::path d = scratch("workers");
  ASSERT_EQ(fracsum("--config " + config("sierpinski_sumset.json") + " --workers 1 --out " + (d / "a").string(), d).code, 0);
  ASSERT_EQ(fracsum("--config " + config("sierpinski_sumset.json") + " --workers 2 --out " + (d / "b").string(), d).code, 0);
  for (const char* f : {"summand.pbm", "sumset.pbm", "points.csv"})
    EXPECT_EQ(slurp(d / "a" / f), slurp(d / "b" / f)) << f;
  fs::remove_all(d);
}

TEST(Cli, ReportNumbersAppearInResults) {
  const fs::path d = scratch("report");
  ASSERT_EQ(fracsum("--config " + config("homogeneous.json") + " --out " + (d / "o").string(), d).code, 0);
  const std::string report = slurp(d / "o" / "report.txt");
  const std::string results = slurp(d / "o" / "results.json");
  EXPECT_EQ(report, slurp(d / "stdout.txt"));
  const std::regex number(R"([-+]?\d+\.\d+(?:[eE][-+]?\d+)?)");
  int seen = 0;
  for (auto it = std::sregex_iterator(report.begin(), report.end(), number); it != std::sregex_iterator(); ++it) {
    EXPECT_NE(results.find(it->str()), std::string::npos) << it->str();
    ++seen;
  }
  EXPECT_GT(seen, 0);
  fs::remove_all(d);
}

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli/cli.hpp"
#include "specgap/constants.hpp"
#include "specgap/serialization.hpp"

namespace {

namespace fs = std::filesystem;
using specgap::Json;
constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = specgap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return cells;
    start = comma + 1;
  }
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("specgap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    unsetenv("SPECGAP_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"bound"}).code, 2);
  EXPECT_EQ(cli({"bound", "--t", "abc"}).code, 2);
  EXPECT_EQ(cli({"bound", "--t", "0.9"}).code, 2);
  EXPECT_EQ(cli({"--quad-tol", "-1", "bound", "--t", "0.1"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, ConstantsDefaultPasses) {
  const Result r = cli({"constants"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("all constants reproduced"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("# quadrature.abs_tolerance = 1e-12"), std::string::npos);
  EXPECT_NE(r.out.find("# seed = 0"), std::string::npos);
}

TEST_F(CliTest, ConstantsLooseTolerancePasses) { EXPECT_EQ(cli({"constants", "--tolerance", "1e-3"}).code, 0); }

TEST_F(CliTest, ConstantsCorruptedTableFails) {
  std::ofstream(path("bad.json")) << R"({"c_off": 0.7, "tau": [0.2062031, 0.3757396, 0.5140409, 0.6184976, 0.7]})";
  const Result r = cli({"constants", "--expected", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("reproduction FAILED"), std::string::npos);
  std::ofstream(path("junk.json")) << "{not json";
  EXPECT_EQ(cli({"constants", "--expected", path("junk.json")}).code, 2);
  EXPECT_EQ(cli({"constants", "--expected", path("missing.json")}).code, 2);
}

TEST_F(CliTest, ConstantsJson) {
  const Result r = cli({"constants", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json doc = Json::parse(r.out);
  EXPECT_TRUE(doc.at("passed").get<bool>());
  EXPECT_EQ(doc.at("rows").size(), 10u);
}

TEST_F(CliTest, BoundAtZero) {
  const Result r = cli({"bound", "--t", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("N*_off(t)        = 0 rad (0 deg)"), std::string::npos) << r.out;
}

TEST_F(CliTest, BoundBelowHalfPi) {
  const Result r = cli({"bound", "--t", "0.69", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json doc = Json::parse(r.out);
  EXPECT_LT(doc.at("n_off_star").get<double>(), kPi / 2.0);
  EXPECT_TRUE(doc.at("ms_bound").is_null());
  EXPECT_TRUE(doc.at("general_bound").is_null());
}

TEST_F(CliTest, BoundOutOfDomain) {
  const Result r = cli({"bound", "--t", "0.7"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unavailable"), std::string::npos);
}

TEST_F(CliTest, BoundPrintsRadiansAndDegrees) {
  const Result r = cli({"bound", "--t", "0.25"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(" rad ("), std::string::npos);
  EXPECT_NE(r.out.find(" deg)"), std::string::npos);
  EXPECT_NE(r.out.find("general bound    = "), std::string::npos);
}

TEST_F(CliTest, CurveCsv) {
  const Result r = cli({"curve", "--from", "0", "--to", "0.69", "--step", "0.01", "--out", path("c.csv")});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const std::string text = slurp(path("c.csv"));
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto rows = lines(text);
  ASSERT_EQ(rows.front(), "t,n_off_star,ms_bound,general_bound");
  ASSERT_EQ(rows.size(), 71u);

  double prev = -1.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto cells = split(rows[k]);
    ASSERT_EQ(cells.size(), 4u) << rows[k];
    const double t = std::stod(cells[0]);
    const double n = std::stod(cells[1]);
    const double ms = std::stod(cells[2]);
    EXPECT_GT(n, prev);
    EXPECT_LE(n, ms + 1e-9);
    EXPECT_EQ(cells[3].empty(), t > 1.0 / kPi);
    prev = n;
  }
  // Spot checks against the bound subcommand.
  for (std::size_t k : {11u, 31u, 61u}) {
    const auto cells = split(rows[k]);
    const Json b = Json::parse(cli({"bound", "--t", cells[0], "--format", "json"}).out);
    EXPECT_EQ(b.at("n_off_star").get<double>(), std::stod(cells[1]));
  }
}

TEST_F(CliTest, CurveIsByteStable) {
  ASSERT_EQ(cli({"curve", "--step", "0.005", "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(cli({"curve", "--step", "0.005", "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, CurveEmptyCellsBeyondDomain) {
  const Result r = cli({"curve", "--from", "0.7", "--to", "0.8", "--step", "0.05"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(split(rows[1])[1].empty());
  EXPECT_FALSE(split(rows[1])[2].empty());
}

TEST_F(CliTest, OptimizeFourAndEightSteps) {
  const Result four = cli({"optimize", "--steps", "4", "--out", path("four.json")});
  ASSERT_EQ(four.code, 0) << four.out;
  const Result eight = cli({"optimize", "--steps", "8", "--out", path("eight.json")});
  ASSERT_EQ(eight.code, 0) << eight.out;
  const Json c4 = Json::parse(slurp(path("four.json")));
  const Json c8 = Json::parse(slurp(path("eight.json")));
  EXPECT_GE(c4.at("reach").get<double>(), 0.6940725);
  EXPECT_GT(c8.at("reach").get<double>(), c4.at("reach").get<double>());
  EXPECT_NO_THROW((void)specgap::certificate_from_json(c4));
  EXPECT_NO_THROW((void)specgap::certificate_from_json(c8));
  EXPECT_EQ(c4.at("meta").at("seed").get<int>(), 0);
}

TEST_F(CliTest, OptimizeZeroStepsSolvesBudget) {
  ASSERT_EQ(cli({"optimize", "--steps", "0", "--out", path("zero.json")}).code, 0);
  const Json c = Json::parse(slurp(path("zero.json")));
  EXPECT_NEAR(c.at("reach").get<double>(), specgap::inverse_ms_bound(specgap::kDefaultBudget), 1e-11);
}

TEST_F(CliTest, OptimizeRejectsBudgetAboveHalfPi) {
  EXPECT_EQ(cli({"optimize", "--budget", "1.6"}).code, 2);
}

TEST_F(CliTest, OptimizeIsDeterministic) {
  ASSERT_EQ(cli({"optimize", "--steps", "3", "--restarts", "4", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(cli({"optimize", "--steps", "3", "--restarts", "4", "--out", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, LemmaCheck) {
  for (const char* grid : {"10000", "10"}) {
    const Result r = cli({"lemma-check", "--grid", grid});
    EXPECT_EQ(r.code, 0) << r.out;
    const auto pos = r.out.find("min margin = ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GT(std::stod(r.out.substr(pos + 13)), 0.0);
    EXPECT_NE(r.out.find("uniform epsilon = "), std::string::npos);
  }
}

TEST_F(CliTest, VerifyHundredTrials) {
  const Result r = cli({"verify", "--trials", "100", "--dims", "8:32", "--t-range", "0:0.69", "--out", path("t.jsonl"),
                     "--summary", path("s.csv")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("N*_off violations = 0"), std::string::npos);
  EXPECT_NE(r.out.find("enclosure failures = 0"), std::string::npos);
  const auto jl = lines(slurp(path("t.jsonl")));
  EXPECT_EQ(jl.size(), 100u);
  for (const auto& line : jl) {
    const Json j = Json::parse(line);
    const int total = j.at("dims")[0].get<int>() + j.at("dims")[1].get<int>();
    EXPECT_GE(total, 8);
    EXPECT_LE(total, 32);
  }
  const auto summary = lines(slurp(path("s.csv")));
  EXPECT_EQ(summary.size(), 11u);
}

TEST_F(CliTest, VerifyZeroPerturbationRows) {
  ASSERT_EQ(cli({"verify", "--trials", "6", "--t-range", "0:0", "--out", path("z.jsonl")}).code, 0);
  // Rotated instances up to dimension 32 leave a rounding floor near 1e-12.
  for (const auto& line : lines(slurp(path("z.jsonl")))) {
    EXPECT_NEAR(Json::parse(line).at("theta").get<double>(), 0.0, 1e-10);
  }
}

TEST_F(CliTest, VerifyRankOne) {
  const Result r = cli({"verify", "--trials", "20", "--dims", "2:2", "--t-range", "0:0.85"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("rank-one instances = 20"), std::string::npos);
  EXPECT_NE(r.out.find("failures = 0"), std::string::npos);
}

TEST_F(CliTest, VerifyBadRange) {
  EXPECT_EQ(cli({"verify", "--dims", "eight"}).code, 2);
  EXPECT_EQ(cli({"verify", "--t-range", "0:0.9"}).code, 2);
}

TEST_F(CliTest, SeedFromEnvironment) {
  const auto run_with = [&](const char* file, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"verify", "--trials", "5", "--out", path(file)};
    args.insert(args.end(), extra.begin(), extra.end());
    EXPECT_EQ(cli(args).code, 0);
    return slurp(path(file));
  };
  const std::string base = run_with("a.jsonl");
  EXPECT_EQ(run_with("b.jsonl"), base);
  setenv("SPECGAP_SEED", "17", 1);
  const std::string env = run_with("c.jsonl");
  EXPECT_NE(env, base);
  EXPECT_EQ(run_with("d.jsonl", {"--seed", "0"}), base);
  EXPECT_EQ(run_with("e.jsonl", {"--seed", "17"}), env);
  unsetenv("SPECGAP_SEED");
}

TEST(CliExecutable, ExitCodes) {
  const auto status = [](const std::string& args) {
    const int raw = std::system((std::string(SPECGAP_EXE) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("bound --t 0.2"), 0);
  EXPECT_EQ(status("bound --t 0.7"), 2);
  EXPECT_EQ(status("nonsense"), 2);
}

} // namespace

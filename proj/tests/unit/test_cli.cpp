#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

int cli(const std::string& args) {
  const std::string cmd = std::string(NCPL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "ncpl_cli" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Cli, RunPresetSucceedsAndOverridesApply) {
  const auto d = scratch("run");
  EXPECT_EQ(cli("run --preset quadratic-theorem1 --seed 9 --cadence 100 --out " + (d / "t.csv").string()), 0);
  const std::string text = slurp(d / "t.csv");
  EXPECT_NE(text.find("\"seed\":9"), std::string::npos);
  EXPECT_NE(text.find("\n100,200,"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const auto d = scratch("bad");
  std::ofstream(d / "bad.json") << R"({"problem": {"id": "nope"}, "solver": {"id": "agda"}})";
  EXPECT_EQ(cli("run " + (d / "bad.json").string()), 2);
  EXPECT_EQ(cli("run " + (d / "missing.json").string()), 2);
  EXPECT_EQ(cli("run --preset no-such-preset"), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
}

TEST(Cli, DivergenceExitsWithThree) {
  const auto d = scratch("diverge");
  std::ofstream(d / "c.json") << R"({"problem": {"id": "quadratic-saddle"},
    "solver": {"id": "agda", "stepsizes": {"tau1": 50, "tau2": 50}}, "horizon": 1000})";
  EXPECT_EQ(cli("run " + (d / "c.json").string() + " --out " + (d / "t.csv").string()), 3);
  EXPECT_NE(slurp(d / "t.csv").find("# FAILED"), std::string::npos);
}

TEST(Cli, ConvertAndListPresets) {
  EXPECT_EQ(cli("convert to-f --x 0.001 --y 0.3 --eps 1e-3"), 0);
  EXPECT_EQ(cli("convert to-phi --x 0.0005 --y 0.00025 --eps 1e-3"), 0);
  EXPECT_EQ(cli("convert to-f --x 1,2 --y 0 --eps 1e-3"), 2);
  const auto d = scratch("presets");
  EXPECT_EQ(cli("list-presets --dump " + d.string()), 0);
  EXPECT_TRUE(fs::exists(d / "wgan-linear-smoothed.json"));
  // A dumped preset runs through the file path like any config.
  std::ofstream(d / "q.json") << slurp(d / "quadratic-theorem2.json");
  EXPECT_EQ(cli("run " + (d / "q.json").string() + " --out " + (d / "q.csv").string()), 0);
}

TEST(Cli, SweepWritesSummary) {
  const auto d = scratch("sweep");
  std::ofstream(d / "s.json") << R"({"problem": {"id": "quadratic-saddle"},
    "solver": {"id": "agda", "stepsizes": {"tau1": 0.05, "tau2": 0.2}}, "horizon": 20,
    "sweep": {"grid": [{"path": "solver.stepsizes.tau1", "values": [0.01, 0.05]}], "seeds": 2}})";
  EXPECT_EQ(cli("sweep " + (d / "s.json").string() + " --out " + (d / "out").string()), 0);
  EXPECT_TRUE(fs::exists(d / "out" / "summary.csv"));
  EXPECT_TRUE(fs::exists(d / "out" / "cell1_seed1.csv"));
}

}  // namespace

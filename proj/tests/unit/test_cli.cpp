#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "erdiff/cli.hpp"
#include "erdiff/corpus.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "erdiff");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path dataset_dir(const std::string& tag, std::size_t records, std::uint32_t seed) {
  auto dir = testing::scratch_dir(tag);
  save_split(testing::synthetic_dataset(records, seed), dir);
  return dir;
}

TEST(Cli, HelpAndVersionSucceed) {
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("profile"), std::string::npos);
  auto version = run({"--version"});
  EXPECT_EQ(version.code, 0);
  EXPECT_FALSE(version.out.empty());
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({"profile"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"profile", "-d", "/nonexistent/dir"}).code, 2);
}

TEST(Cli, MissingTestSplitIsAnInputError) {
  auto dir = dataset_dir("cli-missing", 30, 2);
  fs::remove(dir / "test.csv");
  auto r = run({"profile", "-d", dir.string(), "-o", (dir / "out").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("test.csv"), std::string::npos) << r.err;
}

TEST(Cli, ProfileWritesReproducibleOutputs) {
  auto dir = dataset_dir("cli-profile", 40, 3);
  auto out = testing::scratch_dir("cli-profile-out");
  std::vector<std::string> args{"profile", "-d", dir.string(), "--name", "syn", "-o", out.string(), "--svg"};
  auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  auto profile = slurp(out / "syn" / "profile.json");
  auto linearity = slurp(out / "linearity.csv");
  EXPECT_TRUE(fs::exists(out / "complexity.csv"));
  EXPECT_TRUE(fs::exists(out / "linearity.svg"));
  auto j = nlohmann::json::parse(profile);
  EXPECT_EQ(j["dataset"], "syn");
  EXPECT_EQ(j["complexity"]["measures"].size(), 17u);

  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(out / "syn" / "profile.json"), profile);
  EXPECT_EQ(slurp(out / "linearity.csv"), linearity);
}

TEST(Cli, ConfigFileSuppliesOptionsAndFlagsOverrideIt) {
  auto dir = dataset_dir("cli-config", 30, 4);
  auto out = testing::scratch_dir("cli-config-out");
  {
    std::ofstream cfg(out / "erdiff.toml");
    cfg << "[profile]\nseed = 9\nepsilon = 0.2\n";
  }
  auto r = run({"--config", (out / "erdiff.toml").string(), "profile", "-d", dir.string(), "--name", "c", "--seed",
                "11", "-o", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(slurp(out / "c" / "profile.json"));
  EXPECT_EQ(j["complexity"]["seed"], 11);
  EXPECT_DOUBLE_EQ(j["complexity"]["epsilon"].get<double>(), 0.2);
}

TEST(Cli, EsdeVerdictAndReportChain) {
  auto dir = dataset_dir("cli-chain", 40, 5);
  auto out = testing::scratch_dir("cli-chain-out");
  ASSERT_EQ(run({"profile", "-d", dir.string(), "--name", "chain", "-o", (out / "profiles").string()}).code, 0);

  auto esde = run({"esde", "-d", dir.string(), "--name", "chain", "--scheme", "SA", "--scheme", "SB", "--baselines",
                   "-o", (out / "results.csv").string()});
  ASSERT_EQ(esde.code, 0) << esde.err;
  EXPECT_NE(esde.out.find("SA-ESDE"), std::string::npos);
  EXPECT_NE(esde.out.find("RF[SB]"), std::string::npos);

  auto verdict = run({"verdict", "--profile", (out / "profiles").string(), "--results", (out / "results.csv").string(),
                      "-o", (out / "verdicts").string()});
  ASSERT_EQ(verdict.code, 0) << verdict.err;
  ASSERT_TRUE(fs::exists(out / "verdicts" / "chain.verdict.json"));
  auto v = nlohmann::json::parse(slurp(out / "verdicts" / "chain.verdict.json"));
  EXPECT_FALSE(v["inputs"]["nlb"].is_null());

  auto report = run({"report", (out / "verdicts").string(), "--svg", (out / "svg").string()});
  ASSERT_EQ(report.code, 0) << report.err;
  EXPECT_NE(report.out.find("| chain |"), std::string::npos) << report.out;
  EXPECT_TRUE(fs::exists(out / "svg" / "nlb.svg"));
}

TEST(Cli, EmbeddingSchemesWithoutStoreArePartial) {
  auto dir = dataset_dir("cli-partial", 30, 6);
  auto out = testing::scratch_dir("cli-partial-out");
  auto r = run({"esde", "-d", dir.string(), "--scheme", "SA", "--scheme", "SAF", "-o", (out / "r.csv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SAF"), std::string::npos);
  auto all_skipped = run({"esde", "-d", dir.string(), "--scheme", "SAF", "-o", (out / "s.csv").string()});
  EXPECT_EQ(all_skipped.code, 2);
}

TEST(Cli, VerdictWithOnlyLinearResultsIsPartial) {
  auto dir = dataset_dir("cli-linear", 30, 7);
  auto out = testing::scratch_dir("cli-linear-out");
  ASSERT_EQ(run({"profile", "-d", dir.string(), "--name", "lin", "-o", (out / "p").string()}).code, 0);
  ASSERT_EQ(run({"esde", "-d", dir.string(), "--name", "lin", "--scheme", "SA", "-o", (out / "r.csv").string()}).code,
            0);
  auto r = run({"verdict", "--profile", (out / "p").string(), "--results", (out / "r.csv").string(), "-o",
                (out / "v").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(fs::exists(out / "v" / "lin.verdict.json"));
}

TEST(Cli, GenerateMeetsRecallAndGrowsWithIt) {
  auto src = testing::synthetic_sources({});
  auto dir = testing::scratch_dir("cli-gen");
  save_table(src.left, dir / "left.csv");
  save_table(src.right, dir / "right.csv");
  save_gold(src.gold, dir / "gold.csv");

  auto base = std::vector<std::string>{"generate", "--left", (dir / "left.csv").string(), "--right",
                                       (dir / "right.csv").string(), "--gold", (dir / "gold.csv").string()};
  auto a_args = base;
  a_args.insert(a_args.end(), {"-o", (dir / "a").string()});
  auto a = run(a_args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto ma = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  EXPECT_GE(ma["blocking"]["pc"].get<double>(), 0.9);

  auto b_args = base;
  b_args.insert(b_args.end(), {"--recall-min", "0.99", "-o", (dir / "b").string()});
  ASSERT_EQ(run(b_args).code, 0);
  auto mb = nlohmann::json::parse(slurp(dir / "b" / "manifest.json"));
  EXPECT_GE(mb["blocking"]["pc"].get<double>(), 0.99);
  EXPECT_GE(mb["blocking"]["candidates"].get<std::size_t>(), ma["blocking"]["candidates"].get<std::size_t>());

  ASSERT_EQ(run(a_args).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "a" / "manifest.json")), ma);

  auto bad = base;
  bad.insert(bad.end(), {"--recall-min", "1.5", "-o", (dir / "c").string()});
  EXPECT_EQ(run(bad).code, 2);
}

}  // namespace
}  // namespace erdiff

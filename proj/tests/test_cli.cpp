#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fcl/cli.hpp"

namespace fcl {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fcl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, CountExample) {
  const auto r = cli({"count", "J", "--p", "7", "--L", "0", "--N", "6", "--ell", "1", "--lambda", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "10\n");
}

TEST(Cli, ExpsumExample) {
  const auto r = cli({"expsum", "single", "--p", "7", "--L", "0", "--N", "6", "--a", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "6+0i\n");
}

TEST(Cli, VerifyExample) {
  const auto r = cli({"verify", "T2.1", "--primes", "101..199", "--ell", "1", "--engine", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theorem,p,K,M,L,N,S,T,ell,k,r,s,lhs,rhs,ratio");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 21);
}

TEST(Cli, Factorials) {
  EXPECT_EQ(cli({"factorials", "--p", "7"}).out, "1 2 6 3 1 6\n");
  const auto csv = cli({"factorials", "--p", "7", "--L", "2", "--N", "2", "--format", "csv"});
  EXPECT_EQ(csv.out, "n,factorial\n3,6\n4,3\n");
}

TEST(Cli, FixedSmallCases) {
  EXPECT_EQ(cli({"count", "F", "--p", "7"}).out, "246\n");
  EXPECT_EQ(cli({"count", "T", "--p", "7", "--lambda", "1"}).out, "8\n");
  EXPECT_EQ(cli({"count", "T", "--p", "7", "--lambda", "-1"}).out, "10\n");
  EXPECT_EQ(cli({"count", "SIGNED", "--p", "7", "--signs", "+-"}).out, "10\n");
  EXPECT_EQ(cli({"count", "R", "--p", "7", "--engine", "both"}).out, "45\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"count", "J", "--p", "8"}).code, 2);
  EXPECT_EQ(cli({"count", "J", "--p", "7", "--N", "9"}).code, 2);
  EXPECT_EQ(cli({"count", "X", "--p", "7"}).code, 2);
  EXPECT_EQ(cli({"count", "J"}).code, 2);
  EXPECT_EQ(cli({"count", "R", "--p", "7", "--lambda", "0"}).code, 2);
  EXPECT_EQ(cli({"count", "J", "--p", "7", "--engine", "fast"}).code, 2);
  EXPECT_EQ(cli({"count", "J", "--p", "7", "--bogus", "1"}).code, 2);
  EXPECT_EQ(cli({"count", "J", "--p", "10007", "--ell", "3", "--engine", "brute"}).code, 3);
  const auto err = cli({"count", "J", "--p", "7", "--N", "9"}).err;
  EXPECT_NE(err.find("--N"), std::string::npos) << err;
}

TEST(Cli, JsonEnvelope) {
  const auto r = cli({"count", "J", "--p", "7", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["tool"], "fcl");
  EXPECT_EQ(j["results"]["count"], 10);
  EXPECT_EQ(j["config"]["command"], "count");
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_TRUE(j["warnings"].is_array());
}

TEST(Cli, ReplayReproducesResults) {
  const auto first = cli({"verify", "T3.1", "--primes", "101..131", "--k", "1", "--ell", "1", "--format", "json"});
  ASSERT_EQ(first.code, 0) << first.err;
  const auto j = Json::parse(first.out);
  const auto path = std::filesystem::temp_directory_path() / "fcl-replay-test.json";
  std::ofstream(path) << first.out;
  const auto second = cli({"--config", path.string()});
  ASSERT_EQ(second.code, 0) << second.err;
  const auto k = Json::parse(second.out);
  EXPECT_EQ(j["config"].dump(), k["config"].dump());
  EXPECT_EQ(j["results"].dump(), k["results"].dump());
  std::filesystem::remove(path);
}

TEST(Cli, ConfigRoundTrip) {
  ExperimentConfig c;
  c.command = "count";
  c.target = "R";
  c.p = 11;
  c.lambda = -3;
  c.signs = "+-";
  c.cache_dir = "/tmp/x";
  EXPECT_EQ(ExperimentConfig::from_json(c.to_json()).to_json(), c.to_json());
  EXPECT_THROW(ExperimentConfig::from_json(Json{{"command", "count"}, {"typo", 1}}), Error);
}

TEST(Cli, CacheDirFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "fcl-cli-env-cache";
  std::filesystem::remove_all(dir);
  setenv("FCL_CACHE_DIR", dir.c_str(), 1);
  EXPECT_EQ(cli({"count", "F", "--p", "101", "--N", "30", "--M", "30"}).code, 0);
  EXPECT_EQ(cli({"factorials", "--p", "101", "--N", "30"}).code, 0);
  unsetenv("FCL_CACHE_DIR");
  EXPECT_TRUE(std::filesystem::exists(dir / "dlog-101.fcl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "window-101-0-30.fcw"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, StatsAndSweeps) {
  const auto d = cli({"stats", "distinct", "--p", "7"});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("7,4,"), std::string::npos);
  const auto disc = cli({"stats", "discrepancy", "--p", "101", "--format", "json"});
  ASSERT_EQ(disc.code, 0) << disc.err;
  const auto row = Json::parse(disc.out)["results"]["rows"][0];
  EXPECT_GE(row["estimate"].get<double>(), row["direct"].get<double>());
  EXPECT_EQ(cli({"sweep", "f11", "--primes", "101..120"}).code, 0);
  EXPECT_EQ(cli({"sweep", "spectrum-max", "--primes", "101..120"}).code, 0);
  EXPECT_EQ(cli({"sweep", "f11", "--p", "101"}).code, 2);
  const auto spec = cli({"expsum", "spectrum", "--p", "101", "--engine", "both", "--format", "tsv"});
  EXPECT_EQ(spec.code, 0) << spec.err;
  EXPECT_EQ(spec.out.substr(0, 12), "a\tre\tim\tabs\n");
}

TEST(Cli, CharacterSum) {
  const auto r = cli({"expsum", "char", "--p", "7", "--j", "0"});
  EXPECT_EQ(r.out, "6+0i\n");
}

TEST(Cli, SkippedCellsWarn) {
  const auto r = cli({"verify", "T2.3", "--p", "101", "--M", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("skipped"), std::string::npos);
}

}  // namespace
}  // namespace fcl

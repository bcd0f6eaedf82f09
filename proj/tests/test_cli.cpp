#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dnacc/cli.hpp"

namespace dnacc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;

  [[nodiscard]] std::string first_line() const { return out.substr(0, out.find('\n')); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(DNACC_SAMPLES_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dnacc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << content;
    return path;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, IntersectTauOneYes) {
  const auto r = run({"intersect", "--a", sample("tau_one_a.txt"), "--b", sample("tau_one_b.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.first_line(), "YES");
  EXPECT_NE(r.out.find("000 -> 110"), std::string::npos);
  const auto no = run({"intersect", "--a", sample("tau_one_a.txt"), "--b", sample("tau_one_b.txt"), "--params", "ei=0"});
  EXPECT_EQ(no.first_line(), "NO");
}

TEST_F(CliTest, OracleIntersectAgrees) {
  const auto r = run({"oracle-intersect", "--a", sample("tau_one_a.txt"), "--b", sample("tau_one_b.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "YES\n");
}

TEST_F(CliTest, DistanceOfIdenticalFilesIsZero) {
  const auto r = run({"distance", "--a", sample("code.txt"), "--b", sample("code.txt")});
  // code.txt holds three messages; distance wants exactly one per file.
  EXPECT_EQ(r.code, 2);
  const auto m = run({"distance", "--a", sample("message.txt"), "--b", sample("message.txt")});
  EXPECT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.first_line(), "D=0");
}

TEST_F(CliTest, DistanceInfinityAndParamsFlag) {
  const auto a = write("a.txt", "0001\n0110\n");
  const auto b = write("b.txt", "0000\n0110\n");
  const auto r = run({"distance", "--a", a, "--b", b, "--params", "l=2"});
  EXPECT_EQ(r.first_line(), "D=inf");
  const auto missing = run({"distance", "--a", a, "--b", b});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("missing parameter"), std::string::npos);
}

TEST_F(CliTest, MinDistanceReportsPair) {
  const auto r = run({"min-distance", "--code", sample("code.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  // {000,011} vs {101,110}: I(0) {00} vs {11}, I(1) {01} vs {10} -> 2.
  // {000,011} vs {001,100}: I(0) {00} vs {10}, I(1) {01} vs {00} -> 1.
  // {101,110} vs {001,100}: I(0) {11} vs {10}, I(1) {10} vs {00} -> 1.
  EXPECT_EQ(r.first_line(), "D=1");
  EXPECT_NE(r.out.find("pair: 0 2"), std::string::npos);
}

TEST_F(CliTest, VerifyVerdicts) {
  const auto ok = run({"verify", "--code", sample("code.txt")});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.first_line(), "CORRECTING");
  const auto bad = run({"verify", "--code", sample("code.txt"), "--params", "ei=1"});
  EXPECT_EQ(bad.first_line(), "NOT_CORRECTING");
  EXPECT_NE(bad.out.find("bijection within (2,0)"), std::string::npos);
  const auto by_distance = run({"verify", "--code", sample("code.txt"), "--params", "ei=1", "--method", "distance"});
  EXPECT_EQ(by_distance.first_line(), "NOT_CORRECTING");
  const auto unknown = run({"verify", "--code", sample("code.txt"), "--params", "K=3,tau=1/3,ei=1"});
  EXPECT_EQ(unknown.first_line(), "INDETERMINATE");
  EXPECT_NE(unknown.out.find("reason:"), std::string::npos);
}

TEST_F(CliTest, VerifyRejectsMixedLengths) {
  const auto r = run({"verify", "--code", sample("code_mixed_length.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("code_mixed_length.txt:6"), std::string::npos) << r.err;
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--code", path("missing.txt")}).code, 2);
  EXPECT_EQ(run({"verify", "--code", sample("code.txt"), "--params", "tau=0.5"}).code, 2);
  EXPECT_EQ(run({"verify", "--code", sample("code.txt"), "--params", "ei=9"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"search", "--params", "M=2,L=3,l=2,K=2,tau=1,ei=0,ed=0", "--strategy", "best"}).code, 2);
  const auto bad = write("bad.txt", "%params M=1,L=2,l=1,K=1,tau=1,ei=0,ed=0\n0x\n");
  const auto r = run({"verify", "--code", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.txt:2"), std::string::npos);
  const auto dup = write("dup.txt", "%params M=2,L=3,l=2,K=1,tau=1,ei=0,ed=0\n000\n001\n");
  EXPECT_EQ(run({"verify", "--code", dup}).code, 2);
}

TEST_F(CliTest, ConflictingHeadersAreRejected) {
  const auto a = write("a.txt", "%params K=2\n00\n");
  const auto b = write("b.txt", "%params K=3\n10\n");
  const auto r = run({"intersect", "--a", a, "--b", b, "--params", "M=1,L=2,l=1,tau=1,ei=0,ed=0"});
  EXPECT_EQ(r.code, 2);
  // An explicit flag settles the conflict only if headers agree; flags override headers, not each other.
  const auto c = write("c.txt", "%params K=2\n10\n");
  EXPECT_EQ(run({"intersect", "--a", a, "--b", c, "--params", "K=3,M=1,L=2,l=1,tau=1,ei=0,ed=0"}).code, 0);
}

TEST_F(CliTest, ResourceCapsExitThree) {
  const auto a = write("a.txt", "%params M=2,L=6,l=2,K=4,tau=1,ei=2,ed=4\n000000\n010000\n");
  const auto b = write("b.txt", "000001\n010001\n");
  EXPECT_EQ(run({"oracle-intersect", "--a", a, "--b", b, "--cap", "10"}).code, 3);
  EXPECT_EQ(run({"search", "--params", "M=2,L=4,l=2,K=2,tau=1,ei=0,ed=0", "--strategy", "exact"}).code, 3);
  EXPECT_EQ(run({"search", "--params", "M=2,L=4,l=2,K=2,tau=1,ei=0,ed=0", "--cap", "10"}).code, 3);
}

TEST_F(CliTest, QuietPrintsFirstLineOnly) {
  const auto r = run({"intersect", "--a", sample("tau_one_a.txt"), "--b", sample("tau_one_b.txt"), "--quiet"});
  EXPECT_EQ(r.out, "YES\n");
}

TEST_F(CliTest, SimulateThenMemberRoundTrip) {
  for (int seed = 0; seed < 100; ++seed) {
    const auto pool = path("pool.txt");
    const auto s = run({"simulate", "--message", sample("message.txt"), "--seed", std::to_string(seed), "--out", pool});
    ASSERT_EQ(s.code, 0) << s.err;
    ASSERT_EQ(s.out, "POOL reads=12\n");
    const auto m = run({"member", "--pool", pool, "--message", sample("message.txt")});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(m.out, "YES\n") << "seed " << seed;
  }
}

TEST_F(CliTest, MemberRejectsForeignPool) {
  const auto pool = write("pool.txt", "000101\n000101\n000101\n000101\n011110\n011110\n011110\n011110\n"
                                      "111111\n111111\n111111\n111111\n");
  const auto m = run({"member", "--pool", pool, "--message", sample("message.txt")});
  EXPECT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.out, "NO\n");
  const auto short_pool = write("short.txt", "000101\n");
  EXPECT_EQ(run({"member", "--pool", short_pool, "--message", sample("message.txt")}).code, 2);
}

TEST_F(CliTest, SimulateProvenanceSidecar) {
  const auto prov = path("prov.txt");
  const auto s = run({"simulate", "--message", sample("message.txt"), "--seed", "7", "--provenance", prov});
  ASSERT_EQ(s.code, 0) << s.err;
  std::istringstream lines(slurp(prov));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# read source flips");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 12);
  // Pool on stdout after the first line: header, comment, 12 reads.
  EXPECT_NE(s.out.find("%params M=3,L=6,l=3,K=4,tau=3/4,ei=1,ed=1"), std::string::npos);
  EXPECT_NE(s.out.find("# seed=7 rng=mt19937_64 noise=uniform"), std::string::npos);
}

TEST_F(CliTest, SearchWritesCodeAndTable) {
  const auto out = path("code.txt");
  const auto table = path("table.csv");
  const auto r = run({"search", "--params", "M=2,L=3,l=2,K=2,tau=1,ei=1,ed=0", "--strategy", "exact", "--out", out,
                      "--table", table});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.first_line(), "SIZE=3");
  const auto v = run({"verify", "--code", out});
  EXPECT_EQ(v.first_line(), "CORRECTING");
  const auto r2 = run({"search", "--params", "M=2,L=3,l=2,K=2,tau=1,ei=1,ed=0", "--strategy", "greedy", "--restrict",
                       "1,0", "--table", table});
  ASSERT_EQ(r2.code, 0) << r2.err;
  std::istringstream rows(slurp(table));
  std::string header, first, second;
  std::getline(rows, header);
  std::getline(rows, first);
  std::getline(rows, second);
  EXPECT_EQ(header, "M,L,l,K,tau,ei,ed,restrict,space,code_size,strategy,seconds");
  EXPECT_EQ(first.rfind("2,3,2,2,1,1,0,none,24,3,exact,", 0), 0U) << first;
  EXPECT_EQ(second.rfind("2,3,2,2,1,1,0,\"1,0\",", 0), 0U) << second;
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

}  // namespace
}  // namespace dnacc

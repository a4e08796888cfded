#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const auto tmp = fs::temp_directory_path() / ("evlab_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string(EVLAB_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(tmp);
  return r;
}

}  // namespace

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run("frobnicate").code, 2); }

TEST(Cli, DriftCheckSizeGuard) { EXPECT_EQ(run("drift-check --max-size 20").code, 2); }

TEST(Cli, DriftCheckPhi1Sign) {
  const auto r = run("drift-check --beta 4/7 --p 0 --max-size 10 --functional phi1 --expect-sign nonpositive");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("config_blocks,beta,p,functional,formula,oracle,gap\n", 0), 0u);
}

TEST(Cli, DriftCheckF2MartingaleAtPureVoter) {
  EXPECT_EQ(run("drift-check --beta 1 --p 1/2 --max-size 10 --functional f2 --expect-sign zero").code, 0);
}

TEST(Cli, DriftCheckSignViolationIsFailure) {
  EXPECT_EQ(run("drift-check --beta 0 --p 0 --max-size 6 --functional f1 --expect-sign nonpositive").code, 1);
}

TEST(Cli, BadParameterIsUsageError) {
  EXPECT_EQ(run("drift-check --beta 3/2 --max-size 4").code, 2);
  EXPECT_EQ(run("render --s0 8,x,4,1").code, 2);
}

TEST(Cli, AuditSingle) {
  const auto r = run("audit --s0 8,3,4,1,2,1,2,1,8,4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"all_pass\": true"), std::string::npos);
}

TEST(Cli, AuditExhaustive) { EXPECT_EQ(run("audit --max-size 8 --random 50 --seed 3").code, 0); }

TEST(Cli, TauDeterministic) {
  const auto a = run("tau --beta 1 --p 0.5 --s0 01 --replicas 200 --cap 10000 --seed 7");
  const auto b = run("tau --beta 1 --p 0.5 --s0 01 --replicas 200 --cap 10000 --seed 7 --threads 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("replica,seed,tau,censored,tau_c\n", 0), 0u);
}

TEST(Cli, GrowthDeterministic) {
  const auto a = run("growth --beta 0 --p 0.5 --horizon 2000 --replicas 2 --seed 7");
  const auto b = run("growth --beta 0 --p 0.5 --horizon 2000 --replicas 2 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("replica,t,max_size,max_blocks,f1,f2,rho2\n", 0), 0u);
}

TEST(Cli, Simulate) {
  const auto r = run("simulate --beta 0.2 --p 0.4 --s0 1,1 --horizon 50 --seed 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("t,size"), std::string::npos);
  const auto c = run("simulate --beta 0.2 --p 0.4 --s0 1,1 --horizon 50 --seed 1 --coloured");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("t,size,chi,zeta,obstruction\n", 0), 0u);
}

TEST(Cli, Render) {
  const auto r = run("render --s0 8,3,4,1,2,1,2,1,8,4 --highlight-rect");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("area f1 = 162"), std::string::npos);
  EXPECT_NE(r.out.find("largest-rectangle"), std::string::npos);
  const auto g = run("render");
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("ground state"), std::string::npos);
}

TEST(Cli, ExploratoryProbeIsLabelled) {
  const auto r = run("probe --kind recurrence --beta 0.05 --p 0.3 --cap 1000 --replicas 100 --seed 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("EXPLORATORY"), std::string::npos);
}

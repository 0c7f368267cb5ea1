#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PODFORGE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return std::string(PODFORGE_TMP) + "/" + name; }

}  // namespace

TEST(Cli, Invariants) {
  const auto r = run("invariants --model Yinv --field fp:101");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dim 7 deg 10\n");
}

TEST(Cli, ConstructVerifyDeterministic) {
  ASSERT_EQ(run("construct infinity --seed 7 --field fp:101 --out " + tmp("b1.json")).code, 0);
  ASSERT_EQ(run("construct infinity --seed 7 --field fp:101 --out " + tmp("b2.json")).code, 0);
  EXPECT_EQ(slurp(tmp("b1.json")), slurp(tmp("b2.json")));
  EXPECT_EQ(run("verify " + tmp("b1.json") + " --mode exact --samples 25").code, 0);
}

TEST(Cli, ModelRoundTrip) {
  ASSERT_EQ(run("model Y_p --field fp:101 --out " + tmp("yp.json")).code, 0);
  const auto r = run("invariants --in " + tmp("yp.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dim 5 deg 6\n");
}

TEST(Cli, Dual) {
  std::ofstream(tmp("pts.json")) << R"({"ambient":["m11","m12","m22","x1","x2","r","h"],"kind":"points","field":"q","basis":[["1","0","1","0","0","0","-2"]]})";
  const auto r = run("dual --form sbsc_planar7 --in " + tmp("pts.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"kind\": \"forms\""), std::string::npos);
}

TEST(Cli, Duporcq) {
  std::ofstream(tmp("legs.json")) << R"({"base": [[0,0,0],[3,0,0],[1,4,0],[-2,5,0],[4,-3,0]],
    "platform": [[1,2,0],[0,-1,0],[5,2,0],[3,3,0],[-1,-4,0]], "lengths_squared": ["7","11","13/2","5","9"]})";
  const auto r = run("construct duporcq --field q --legs " + tmp("legs.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sixth_leg_weights"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("model nosuch").code, 2);
  EXPECT_EQ(run("invariants --model X --field fp:4").code, 2);
  EXPECT_EQ(run("verify " + tmp("missing.json")).code, 2);
  std::ofstream(tmp("same.json")) << R"({"base": [[1,1,0],[1,1,0],[1,1,0],[1,1,0],[1,1,0]],
    "platform": [[1,2,0],[0,-1,0],[5,2,0],[3,3,0],[-1,-4,0]], "lengths_squared": ["7","11","13","5","9"]})";
  EXPECT_EQ(run("construct duporcq --field q --legs " + tmp("same.json")).code, 3);
}

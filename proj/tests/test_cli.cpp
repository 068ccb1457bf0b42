#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KBROADCAST_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kbroadcast_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SolvePath) {
  auto g = write("p7.txt", "7 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
  auto r = run("solve --graph " + g + " --k 2 --format table");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3\n");
  auto o = run("solve --graph " + g + " --k 2 --method oracle --format table");
  EXPECT_EQ(o.out, "3\n");
}

TEST_F(CliTest, SolveJsonAndWitness) {
  auto tk = run("gen --family tk --k 3");
  ASSERT_EQ(tk.code, 0);
  EXPECT_EQ(tk.out.substr(0, 6), "12 11\n");
  auto g = write("t3.txt", tk.out);
  auto r = run("solve --graph " + g + " --k 3 --format json --witness " + path("w.json"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], 5);
  auto w = nlohmann::json::parse(slurp(path("w.json")));
  EXPECT_EQ(w["value"], 5);
  int cost = 0;
  for (const auto& a : w["assignments"]) cost += a["power"].get<int>();
  EXPECT_EQ(cost, 5);
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  auto disc = write("d.txt", "3 1\n0 1\n");
  EXPECT_EQ(run("solve --graph " + disc + " --k 2").code, 2);
  auto bad = write("b.txt", "3 2\n0 1\n0 1\n");
  EXPECT_EQ(run("solve --graph " + bad + " --k 2").code, 2);
  EXPECT_EQ(run("solve --graph " + path("missing.txt") + " --k 2").code, 2);
  EXPECT_EQ(run("solve --k 2").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  auto big = run("gen --family random-graph --n 30 --extra 20 --seed 3");
  auto g = write("big.txt", big.out);
  EXPECT_EQ(run("solve --graph " + g + " --k 2 --method oracle --max-nodes 1").code, 3);
}

TEST_F(CliTest, GenIsDeterministic) {
  auto a = run("gen --family random-tree --n 12 --seed 7");
  auto b = run("gen --family random-tree --n 12 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, 6), "12 11\n");
  EXPECT_EQ(run("gen --family spider --legs 3,3,3").out.substr(0, 5), "10 9\n");
  EXPECT_EQ(run("gen --family path --n 4 --out " + path("p4.txt")).code, 0);
  EXPECT_EQ(slurp(path("p4.txt")), "4 3\n0 1\n1 2\n2 3\n");
  EXPECT_EQ(run("gen --family tk --k 2").code, 2);
}

TEST_F(CliTest, Reduce) {
  auto cnf = write("f.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  auto r = run("reduce --cnf " + cnf + " --k 3 --out " + path("g.txt") + " --roles " + path("roles.json") +
               " --format table");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "vertices 39\nedges 46\nthreshold 9\n");
  EXPECT_EQ(slurp(path("g.txt")).substr(0, 6), "39 46\n");
  auto roles = nlohmann::json::parse(slurp(path("roles.json")));
  EXPECT_EQ(roles.size(), 39u);

  auto s = run("reduce --cnf " + cnf + " --k 3");
  EXPECT_NE(s.out.find("# threshold 9\n"), std::string::npos);
  auto bad = write("bad.cnf", "p cnf 3 1\n1 2 0\n");
  EXPECT_EQ(run("reduce --cnf " + bad + " --k 3").code, 2);
  EXPECT_EQ(run("reduce --cnf " + cnf + " --k 2").code, 2);
}

TEST_F(CliTest, AuditTrees) {
  auto r = run("audit --trees --max-n 10 --k 3 --format table");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 violations"), std::string::npos);
  auto j = run("audit --trees --max-n 10 --k 3 --format json");
  std::istringstream lines(j.out);
  std::string line, last;
  while (std::getline(lines, line)) last = line;
  EXPECT_EQ(nlohmann::json::parse(last)["summary"]["violations"], 0);
  EXPECT_NE(run("audit --trees --max-n 8 --k 7 --format table").out.find("0 instances, 0 violations, tight: []"),
            std::string::npos);
}

TEST_F(CliTest, AuditChainAndRandom) {
  auto p9 = write("p9.txt", run("gen --family path --n 9").out);
  auto c = run("audit --chain --graph " + p9 + " --format table");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "chain [3,3,3,3], monotone, endpoints equal\n");
  auto r = run("audit --random 15 --max-n 7 --seed 5 --ks 1,2,3 --format table");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("45 instances, 0 violations"), std::string::npos);
}

TEST_F(CliTest, Spanning) {
  auto c6 = write("c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
  auto r = run("spanning --graph " + c6 + " --k 3 --extract " + path("h.txt") + " --format table");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "graph 2, trees 2, equal\nextracted tree dominated by the witness\n");
  EXPECT_EQ(slurp(path("h.txt")).substr(0, 4), "6 5\n");
  auto j = nlohmann::json::parse(run("spanning --graph " + c6 + " --k 2 --format json").out);
  EXPECT_EQ(j["graph_value"], 2);
  EXPECT_EQ(j["spanning_trees"], 6);
  EXPECT_EQ(run("spanning --graph " + c6 + " --k 2 --extract " + path("x.txt")).code, 2);
  EXPECT_EQ(run("spanning --graph " + c6 + " --k 2 --guard 3").code, 3);
}

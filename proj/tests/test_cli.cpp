#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "dp4/runconfig.hpp"

using namespace dp4;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + MANIN_DP4_EXE + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, CountRows) {
  auto d = run("count --field q --method direct --B 1 --no-timing");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "field,B,method,count,elapsed_s\nq,1,direct,4,0\n");
  auto t = run("count --field q --method torsor --B 1 --no-timing");
  EXPECT_EQ(t.out, "field,B,method,count,elapsed_s\nq,1,torsor,4,0\n");
  auto z = run("count --field q --method torsor --B 0 --no-timing");
  EXPECT_EQ(z.out, "field,B,method,count,elapsed_s\nq,0,torsor,0,0\n");
  auto j = run("count --field qi --method both --B-ladder 1,5 --format json --no-timing");
  ASSERT_EQ(j.code, 0);
  auto arr = nlohmann::json::parse(j.out);
  ASSERT_EQ(arr.size(), 4u);
  EXPECT_EQ(arr[2]["count"], arr[3]["count"]);
  EXPECT_EQ(arr[2]["B"], "5");
}

TEST(Cli, OutputIdenticalAcrossThreadCounts) {
  std::string args = "count --field q --method both --B-ladder 10,100,1000 --no-timing";
  auto ref = run(args + " --threads 1");
  ASSERT_EQ(ref.code, 0);
  EXPECT_EQ(lines(ref.out).size(), 7u);
  for (int th : {4, 8}) EXPECT_EQ(run(args + " --threads " + std::to_string(th)).out, ref.out);
  EXPECT_EQ(run(args, "MANIN_DP4_THREADS=4").out, ref.out);
  auto v1 = run("verify --suite densities --samples 2e5 --threads 1");
  auto v4 = run("verify --suite densities --samples 2e5 --threads 4");
  EXPECT_EQ(v1.out, v4.out);
}

TEST(Cli, EnvironmentSetsDefaultThreads) {
  auto r = run("count --B 1 --dump-config", "MANIN_DP4_THREADS=6");
  EXPECT_NE(r.out.find("threads=6\n"), std::string::npos);
  auto o = run("count --B 1 --threads 2 --dump-config", "MANIN_DP4_THREADS=6");
  EXPECT_NE(o.out.find("threads=2\n"), std::string::npos);
}

TEST(Cli, CompareLadder) {
  auto r = run("compare --field q --B-ladder 10,100,1000 --primes-up-to 1e4");
  ASSERT_EQ(r.code, 0) << r.out;
  auto L = lines(r.out);
  ASSERT_EQ(L.size(), 4u);
  EXPECT_EQ(L[0], "field,B,direct,torsor,match,ratio,c,band_lo,band_hi,in_band");
  for (std::size_t i = 1; i < L.size(); ++i) EXPECT_NE(L[i].find(",yes,"), std::string::npos) << L[i];
  auto e = run("compare --field q");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "field,B,direct,torsor,match,ratio,c,band_lo,band_hi,in_band\n");
  EXPECT_EQ(run("compare --field q --B-ladder 2,10").code, 2);
}

TEST(Cli, VerifySuites) {
  auto id = run("verify --suite identities");
  EXPECT_EQ(id.code, 0);
  EXPECT_EQ(lines(id.out).size(), 1u + 96 + 2);
  EXPECT_EQ(id.out.find("FAIL"), std::string::npos);
  auto fp = run("verify --suite fp --format json");
  EXPECT_EQ(fp.code, 0);
  auto arr = nlohmann::json::parse(fp.out);
  EXPECT_EQ(arr.size(), 6u);
  for (const auto& c : arr) EXPECT_TRUE(c["pass"].get<bool>());
  auto cfg = run("verify --suite volume --samples 1e7 --seed 42 --dump-config");
  EXPECT_EQ(cfg.code, 0);
  EXPECT_NE(cfg.out.find("samples=10000000\n"), std::string::npos);
  EXPECT_NE(cfg.out.find("seed=42\n"), std::string::npos);
  auto vol = run("verify --suite volume --samples 4e5 --seed 42");
  EXPECT_EQ(vol.code, 0) << vol.out;
  EXPECT_EQ(lines(vol.out).size(), 5u);
}

TEST(Cli, ConstantJson) {
  auto r = run("constant --field q --primes-up-to 1e4 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["alpha"], "1/8640");
  EXPECT_EQ(j["euler"]["P"], 10000);
  EXPECT_LE(j["euler"]["tail_lo"].get<double>(), j["euler"]["value"].get<double>());
  ASSERT_EQ(j["omega"].size(), 1u);
  EXPECT_EQ(j["omega"][0]["place"], 0);
  double lo = j["c"]["lo"], hi = j["c"]["hi"];
  EXPECT_LT(lo, hi);
  EXPECT_LT(lo, 1.7150e-5);  // P = 2e5 gives about 1.71498e-5
  EXPECT_GT(hi, 1.7150e-5);
  EXPECT_LT(hi - lo, 1e-2 * lo);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"alpha", "euler", "omega", "c"}));
}

TEST(Cli, ExitCodesForBadConfig) {
  EXPECT_EQ(run("count --field qsqrt3 --B 1").code, 2);
  EXPECT_EQ(run("count --B 1 --bogus").code, 2);
  EXPECT_EQ(run("count --field q --method direct --B 1e6").code, 2);
  EXPECT_EQ(run("count --B 1 --format xml").code, 2);
  EXPECT_EQ(run("count").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --samples 1.5").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("count --B 1 --out /nonexistent/dir/x.csv").code, 2);
}

TEST(Cli, BudgetExhaustionExitCode) {
  // a handful of samples leaves an error bar far above the comparison tolerance
  EXPECT_EQ(run("verify --suite densities --samples 16").code, 3);
  EXPECT_EQ(run("verify --suite volume --samples 16").code, 3);
}

TEST(Cli, OutFileMatchesStdout) {
  std::string path = ::testing::TempDir() + "cli_out.csv";
  auto a = run("count --B-ladder 3,7 --no-timing --out " + path);
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run("count --B-ladder 3,7 --no-timing").out);
}

TEST(RunConfigText, RoundTrip) {
  RunConfig c;
  c.command = "compare";
  c.field = "qr2";
  c.ladder = {Bound(10), Bound(7, 2), Bound(1000000)};
  c.method = "both";
  c.suite = "volume";
  c.precision_bits = 256;
  c.primes_up_to = 20000;
  c.samples = 12345;
  c.seed = 18446744073709551615ull;
  c.out = "/tmp/a b.csv";
  c.format = "json";
  c.threads = 8;
  c.timing = false;
  EXPECT_EQ(from_text(to_text(c)), c);
  EXPECT_EQ(from_text(to_text(RunConfig{})), RunConfig{});
  EXPECT_EQ(to_text(from_text(to_text(c))), to_text(c));
  EXPECT_THROW(from_text("colour=blue\n"), ConfigError);
  EXPECT_THROW(from_text("threads=x\n"), ConfigError);
}

TEST(RunConfigText, RoundTripThroughBinary) {
  std::string path = ::testing::TempDir() + "cli_cfg.txt";
  auto a = run("compare --field qi --B-ladder 3,10 --primes-up-to 5e4 --seed 9 --threads 2 --dump-config");
  ASSERT_EQ(a.code, 0);
  std::ofstream(path) << a.out;
  auto b = run("count --config " + path + " --dump-config");
  EXPECT_EQ(b.out, a.out);
}

TEST(RunConfigText, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(validate(c));
  c.command = "compare";
  c.ladder = {Bound(5, 2)};
  EXPECT_THROW(validate(c), ConfigError);
  c.ladder = {Bound(3)};
  EXPECT_NO_THROW(validate(c));
  c.field = "q(sqrt3)";
  EXPECT_THROW(validate(c), ConfigError);
  EXPECT_EQ(parse_count("1e7"), 10000000);
  EXPECT_EQ(parse_count("2.5e5"), 250000);
  EXPECT_THROW(parse_count("0"), ConfigError);
  EXPECT_THROW(parse_count("1.5"), ConfigError);
}

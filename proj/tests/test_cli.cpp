// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(SUPERYANG_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "superyang_" + name; }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("relations --m 0 --n 1").code, 2);
  EXPECT_EQ(cli("gauss --m 1 --n 0").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("ybe-check --hbar x").code, 2);
  EXPECT_EQ(cli("ybe-check --hbar 0").code, 2);
  EXPECT_EQ(cli("relations --only not-a-relation").code, 2);
  EXPECT_EQ(cli("hopf-check --points 3,3").code, 2);
  EXPECT_EQ(cli("hopf-check --points 3").code, 2);
  EXPECT_EQ(cli("rll-check --a 1").code, 2);  // a = 2 hbar is excluded
  EXPECT_EQ(cli("ybe-check --symbolic --samples 3").code, 2);
  EXPECT_EQ(cli("all --suites ybe,nothing").code, 2);
}

TEST(Cli, PassingRunExitsZero) {
  CliRun r = cli("ybe-check --m 2 --n 1 --hbar 3/7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("summary:"), std::string::npos);
  EXPECT_EQ(cli("ybe-check --m 1 --n 1 --samples 4").code, 0);
  EXPECT_EQ(cli("rll-check --m 1 --n 1 --a 3 --b -7 --order 4").code, 0);
  EXPECT_EQ(cli("gauss --m 2 --n 1 --order 3").code, 0);
}

// The printed odd-root anticommutator fails on every module, so the relation
// command reports a failure and exits 1.
TEST(Cli, RelationsReportPinnedFailure) {
  CliRun r = cli("relations --m 1 --n 1 --a 3 --hbar 1/2 --order 8 --json -");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  int fails = 0;
  for (const auto& c : j["checks"]) {
    if (c["status"] != "fail") continue;
    ++fails;
    std::string name = c["name"];
    EXPECT_TRUE(name == "XplusXminus-anticommutator" || name == "{X+1, X-1}") << name;
    EXPECT_FALSE(c["witness"].is_null());
  }
  EXPECT_EQ(fails, 2);
  EXPECT_EQ(cli("relations --m 2 --n 1 --order 4 --only XX-fermionic --only kk-cross-ij").code, 0);
}

TEST(Cli, JsonSchemaAndSummary) {
  CliRun r = cli("relations --m 2 --n 1 --order 4 --json -");
  auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "schema_version", "tool", "config", "checks", "summary"}));
  EXPECT_EQ(j["schema_version"], 1);
  int pass = 0, fail = 0, skipped = 0, error = 0;
  for (const auto& c : j["checks"]) {
    if (c["status"] == "pass") ++pass;
    if (c["status"] == "fail") ++fail;
    if (c["status"] == "skipped") ++skipped;
    if (c["status"] == "error") ++error;
    EXPECT_FALSE(c.contains("seconds"));
  }
  EXPECT_EQ(j["summary"]["pass"], pass);
  EXPECT_EQ(j["summary"]["fail"], fail);
  EXPECT_EQ(j["summary"]["skipped"], skipped);
  EXPECT_EQ(j["summary"]["error"], error);
  EXPECT_EQ(j["summary"]["total"], j["checks"].size());
  EXPECT_EQ(j["config"]["hbar"], "1/2");
}

TEST(Cli, GoldenFiles) {
  std::string a = tmp("ybe.json"), b = tmp("rel.json");
  EXPECT_EQ(cli("ybe-check --m 1 --n 1 --json " + a).code, 0);
  EXPECT_EQ(slurp(a), slurp(std::string(SUPERYANG_GOLDEN) + "/ybe_gl11.json"));
  EXPECT_EQ(cli("relations --m 1 --n 1 --order 2 --only XX-fermionic --json " + b).code, 0);
  EXPECT_EQ(slurp(b), slurp(std::string(SUPERYANG_GOLDEN) + "/relations_gl11_fermionic.json"));
}

TEST(Cli, AllIsDeterministic) {
  std::string a = tmp("all1.json"), b = tmp("all2.json"), c = tmp("all3.json");
  CliRun r1 = cli("all --m 1 --n 1 --order 3 --json " + a);
  CliRun r2 = cli("all --m 1 --n 1 --order 3 --json " + b);
  CliRun r3 = cli("all --m 1 --n 1 --order 3 --json " + c, "SUPERYANG_WORKERS=3");
  EXPECT_EQ(r1.code, 1);
  EXPECT_EQ(r1.code, r2.code);
  EXPECT_EQ(r1.code, r3.code);
  std::string x = slurp(a);
  EXPECT_FALSE(x.empty());
  EXPECT_EQ(x, slurp(b));
  EXPECT_EQ(x, slurp(c));
}

TEST(Cli, GaussDump) {
  auto small = nlohmann::json::parse(cli("gauss --m 1 --n 1 --order 2 --json -").out);
  auto full = nlohmann::json::parse(cli("gauss --m 1 --n 1 --order 2 --dump --json -").out);
  ASSERT_TRUE(small.contains("factors"));
  EXPECT_FALSE(small["factors"]["L+"]["k"][0].contains("coefficients"));
  EXPECT_TRUE(full["factors"]["L+"]["k"][0].contains("coefficients"));
  EXPECT_EQ(full["factors"]["L-"]["e"][0]["name"], "e_2,1");
  EXPECT_EQ(full["factors"]["L+"]["k"][0]["leading"]["exponent"], 0);
}

TEST(Cli, HopfCheckSuites) {
  auto j = nlohmann::json::parse(cli("hopf-check --m 1 --n 1 --points 3,5,7 --order 3 --json -").out);
  std::set<std::string> names;
  for (const auto& c : j["checks"]) names.insert(c["name"].get<std::string>());
  for (const char* n : {"coassociativity", "antipode", "counit", "grouplike", "sign-stripped-tensor",
                        "same-statuses-as-single-module", "trivial-module-relations"})
    EXPECT_TRUE(names.count(n)) << n;
}

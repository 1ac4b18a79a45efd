#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "splab/cli.hpp"

using namespace splab;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.end(), {"--format", "json"});
  const CliRun r = run(args);
  return json::parse(r.out);
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ErdosExamples) {
  const CliRun w = run({"erdos", "--x", "2", "--y", "8", "--n-max", "100", "--p-max", "100000"});
  EXPECT_EQ(w.code, 1);
  EXPECT_TRUE(contains(w.out, "Witness(n=1, p=7, side=y)")) << w.out;

  const CliRun eq = run({"erdos", "--x", "5", "--y", "5", "--n-max", "100", "--p-max", "1000"});
  EXPECT_EQ(eq.code, 0);
  EXPECT_TRUE(contains(eq.out, "Equal-in-range"));

  const CliRun bad = run({"erdos", "--x", "1", "--y", "2", "--n-max", "100", "--p-max", "100"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_TRUE(contains(bad.err, "usage error"));
}

TEST(Cli, OrderSearchExamples) {
  const CliRun mul = run({"order-search", "--system", "mul", "--elements", "2", "--l", "2", "--ks", "0", "--p-max", "50"});
  EXPECT_EQ(mul.code, 0);
  const json j = run_json({"order-search", "--system", "mul", "--elements", "2", "--l", "2", "--ks", "0", "--p-max", "50"});
  EXPECT_EQ(j["result"]["matches"], json({"7", "23", "31", "47"}));
  EXPECT_EQ(j["exclusions"], json({"2"}));

  const json ec = run_json({"order-search", "--system", "ec", "--curve", "0,0,1,-1,0", "--points", "(0,0)", "--l",
                            "5", "--ks", "1", "--p-max", "10000"});
  EXPECT_FALSE(ec["result"]["matches"].empty());
  EXPECT_EQ(ec["exclusions"], json({"5", "37"}));

  const CliRun arity = run({"order-search", "--system", "mul", "--elements", "2,3", "--l", "2", "--ks", "0", "--p-max", "50"});
  EXPECT_EQ(arity.code, 2);
  EXPECT_TRUE(contains(arity.err, "arity"));
}

TEST(Cli, OrderSearchCsv) {
  const CliRun r = run({"order-search", "--elements", "2", "3", "--l", "2", "--ks", "0,1", "--p-max", "30", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "p,lpart_1,lpart_2,match");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3) << line;
  }
  EXPECT_EQ(rows, 8);  // 5..29
  EXPECT_EQ(run({"erdos", "--x", "2", "--y", "3", "--p-max", "30", "--format", "csv"}).code, 2);
}

TEST(Cli, ImplicationAndDetectRelation) {
  const CliRun imp = run({"implication", "--system", "mul", "--Ps", "2", "--Qs", "4", "--p", "7"});
  EXPECT_EQ(imp.code, 0);
  EXPECT_TRUE(contains(imp.out, "Holds(e == 2 mod 3)")) << imp.out;

  const json ji = run_json({"implication", "--system", "mul", "--Ps", "2", "--Qs", "3", "--p", "7"});
  EXPECT_EQ(ji["result"]["implication"]["status"], "Fails");
  EXPECT_EQ(ji["result"]["implication"]["witness"], json({"3"}));

  const CliRun aff = run({"implication", "--Ps", "2", "--P0", "1", "--Qs", "2", "--Q0", "3", "--p", "7", "--m-bound", "6"});
  EXPECT_TRUE(contains(aff.out, "Fails(m=(3))")) << aff.out;

  const CliRun ver = run({"detect-relation", "--system", "ec", "--curve", "0,0,1,-1,0", "--P", "(0,0)", "--Q", "(1,0)",
                       "--p-max", "1000"});
  EXPECT_EQ(ver.code, 0);
  EXPECT_TRUE(contains(ver.out, "Verified(e=2)")) << ver.out;

  const CliRun ref = run({"detect-relation", "--system", "mul", "--P", "2", "--Q", "3", "--p-max", "100"});
  EXPECT_EQ(ref.code, 1);
  EXPECT_TRUE(contains(ref.out, "Refuted(p=7")) << ref.out;

  const CliRun inc = run({"pair-relation", "--system", "ec", "--curve", "0,1,1,-2,0", "--P", "(-1,1)", "--Q", "(0,0)",
                       "--relation-bound", "5"});
  EXPECT_EQ(inc.code, 3);
  EXPECT_TRUE(contains(inc.out, "Inconclusive(bound=5)")) << inc.out;
}

TEST(Cli, TextAndJsonAgree) {
  const std::vector<std::string> args{"detect-relation", "--P", "2,3", "--Q", "8,27", "--p-max", "1000"};
  const CliRun text = run(args);
  const json j = run_json(args);
  EXPECT_EQ(text.code, 0);
  EXPECT_TRUE(contains(text.out, "Verified(e=" + j["result"]["exponent"].get<std::string>() + ")"));
  EXPECT_EQ(j["result"]["kind"], "Exponent");
  EXPECT_EQ(j["result"]["exponent"], "3");
}

TEST(Cli, CountPoints) {
  const json j = run_json({"count-points", "--curve", "0,0,1,-1,0", "--p", "47"});
  EXPECT_EQ(j["result"]["order"], "57");
  EXPECT_EQ(run({"count-points", "--curve", "0,0,1,-1,0", "--p", "37"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"erdos", "--x", "2"}).code, 2);
  EXPECT_EQ(run({"implication", "--Ps", "2", "--Qs", "3", "--p", "8"}).code, 2);
  EXPECT_EQ(run({"detect-relation", "--system", "ec", "--curve", "0,0,1,-1,0", "--P", "(1,1)", "--Q", "(0,0)",
                 "--p-max", "100"})
                .code,
            2);
  EXPECT_EQ(run({"order-search", "--system", "ec", "--points", "(0,0)", "--l", "2", "--ks", "1", "--p-max", "50"}).code, 2);
  EXPECT_EQ(run({"erdos", "--x", "2", "--y", "3", "--p-max", "30", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ConfigRoundTrip) {
  const json j = run_json({"order-search", "--system", "ec", "--curve", "0,0,1,-1,0", "--points", "(0,0)", "--l", "3",
                           "--ks", "2", "--p-min", "100", "--p-max", "3000", "--seed", "9"});
  const cli::ExperimentConfig c = cli::ExperimentConfig::from_json(j["config"]);
  EXPECT_EQ(c.to_json(), j["config"]);
  EXPECT_EQ(c.l, 3u);
  EXPECT_EQ(c.p_min, 100u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(cli::ExperimentConfig::from_json(c.to_json()), c);
  EXPECT_EQ(j["tool_version"], report::kToolVersion);
}

TEST(Cli, JsonIsByteIdenticalAcrossThreadCounts) {
  const std::vector<std::vector<std::string>> cases{
      {"erdos", "--x", "3", "--y", "12", "--p-max", "20000"},
      {"order-search", "--system", "ec", "--curve", "0,0,1,-1,0", "--points", "(0,0)", "--l", "2", "--ks", "1",
       "--p-max", "20000", "--details"},
      {"detect-relation", "--P", "2,3", "--Q", "1/4,1/9", "--p-max", "3000"},
      {"detect-relation", "--system", "ec", "--curve", "0,1,1,-2,0", "--P", "(0,0)", "--Q", "(-1,1)", "--p-max", "500"},
  };
  for (auto args : cases) {
    args.insert(args.end(), {"--format", "json"});
    auto with = [&](const char* n) {
      auto a = args;
      a.insert(a.end(), {"--threads", n});
      return run(a).out;
    };
    const std::string one = with("1");
    EXPECT_FALSE(one.empty());
    EXPECT_EQ(one, with("8")) << args[0];
    EXPECT_EQ(one, with("3")) << args[0];
  }
}

TEST(Cli, ThreadsFallBackToEnvironment) {
  ::setenv("SPLAB_THREADS", "4", 1);
  EXPECT_EQ(Parallelism{}.resolved(), 4u);
  EXPECT_EQ(Parallelism{2}.resolved(), 2u);
  ::unsetenv("SPLAB_THREADS");
  EXPECT_EQ(Parallelism{}.resolved(), 1u);
}

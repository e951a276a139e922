#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"

#include "mapfp/cli.hpp"
#include "mapfp/io.hpp"
#include "support.hpp"

namespace mapfp::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  std::string file(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    io::write_file(path, content);
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  testing::TempDir dir_;
};

TEST_F(CliTest, SolveMapWithDp) {
  const auto in = file("i.json", R"({"m":2,"a":[3,1],"b":[1,3]})");
  const Outcome r = invoke({"solve", "--problem", "map", "--algorithm", "dp", "--input", in});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["problem"], "map");
  EXPECT_EQ(doc["algorithm"], "dp");
  EXPECT_EQ(doc["value"]["num"], "1");
  EXPECT_EQ(doc["value"]["den"], "3");
  EXPECT_EQ(doc["assignment"], json::parse("[0,1]"));
  EXPECT_TRUE(doc.contains("statesExplored"));
  EXPECT_TRUE(doc.contains("elapsedMs"));
}

TEST_F(CliTest, SolveFpFalseStillExitsZero) {
  const auto in = file("i.json", R"({"m":2,"a":[1,1],"b":[1,2]})");
  for (const std::string algo : {"brute", "dp"}) {
    const Outcome r = invoke({"solve", "--problem", "fp", "--algorithm", algo, "--input", in});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(json::parse(r.out)["decision"], false);
  }
}

TEST_F(CliTest, SolveReportRechecks) {
  const auto in = file("i.json", R"({"m":2,"a":[1,3,2,2],"b":[2,2,1,3]})");
  const auto report = path("r.json");
  ASSERT_EQ(invoke({"solve", "--problem", "fp", "--input", in, "--output", report}).code, kOk);
  const json doc = json::parse(io::read_file(report));
  EXPECT_EQ(doc["decision"], true);
  const auto asg = file("a.json", json{{"assignment", doc["assignment"]}}.dump() + "\n");
  const Outcome c = invoke({"check", "--input", in, "--assignment", asg});
  ASSERT_EQ(c.code, kOk) << c.err;
  EXPECT_EQ(json::parse(c.out)["equalsOverall"], true);
}

TEST_F(CliTest, SolveBudgetExceeded) {
  const auto in = file("i.json", R"({"m":3,"a":[1,1,1,1,1],"b":[1,1,1,1,1]})");
  EXPECT_EQ(invoke({"solve", "--problem", "map", "--algorithm", "brute", "--input", in,
                    "--enumeration-budget", "100"}).code,
            kBudgetExceeded);
  EXPECT_EQ(invoke({"solve", "--problem", "map", "--algorithm", "dp", "--input", in,
                    "--state-budget", "2"}).code,
            kBudgetExceeded);
}

TEST_F(CliTest, SolveRejectsBadInput) {
  const auto bad = file("bad.json", R"({"m":2,"a":[3],"b":[1,3]})");
  const Outcome r = invoke({"solve", "--problem", "map", "--input", bad});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(invoke({"solve", "--problem", "max", "--input", bad}).code, kInvalidInput);
  EXPECT_EQ(invoke({"solve", "--problem", "map", "--input", path("missing.json")}).code, kInvalidInput);
}

TEST_F(CliTest, CheckReportsGroupsAndMinimum) {
  const auto in = file("i.json", R"({"m":2,"a":[3,1],"b":[1,3]})");
  const auto asg = file("a.json", R"({"assignment":[0,1]})");
  const Outcome r = invoke({"check", "--input", in, "--assignment", asg});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["min"]["num"], "1");
  EXPECT_EQ(doc["min"]["den"], "3");
  EXPECT_EQ(doc["equalsOverall"], false);
  EXPECT_FALSE(doc.contains("equalsTarget"));
}

TEST_F(CliTest, CheckTarget) {
  const auto in = file("i.json", R"({"m":2,"a":[1,1,1,1],"b":[1,1,1,1]})");
  const auto asg = file("a.json", R"({"assignment":[1,0,0,1]})");
  const Outcome r = invoke({"check", "--input", in, "--assignment", asg, "--target", "1/1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["equalsTarget"], true);
}

TEST_F(CliTest, CheckRejectsMismatchedAssignment) {
  const auto in = file("i.json", R"({"m":2,"a":[3,1],"b":[1,3]})");
  EXPECT_EQ(invoke({"check", "--input", in, "--assignment", file("a.json", R"({"assignment":[0]})")}).code,
            kInvalidInput);
  EXPECT_EQ(invoke({"check", "--input", in, "--assignment", file("b.json", R"({"assignment":[0,2]})")}).code,
            kInvalidInput);
}

TEST_F(CliTest, GeneratePartitionWithCertificate) {
  const auto out = path("g.json");
  const auto cert = path("g.cert.json");
  const Outcome r = invoke({"generate", "partition", "--c", "1,1,2", "--m", "2", "--witness", "1,2",
                            "--output", out, "--certificate", cert});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(io::read_file(out));
  EXPECT_EQ(doc["params"]["L"], 320);
  EXPECT_EQ(doc["params"]["M"], 10880);
  EXPECT_EQ(json::parse(r.out)["certificateVerified"], true);

  const Outcome c = invoke({"check", "--input", out, "--assignment", cert});
  ASSERT_EQ(c.code, kOk) << c.err;
  EXPECT_EQ(json::parse(c.out)["equalsOverall"], true);
}

TEST_F(CliTest, GenerateThreePartition) {
  const auto out = path("g.json");
  const Outcome r = invoke({"generate", "threepartition", "--d", "3,3,3,3,3,3", "--m", "2", "--witness",
                            "1,2,3;4,5,6", "--output", out});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(io::read_file(out));
  EXPECT_EQ(doc["params"]["L"], 5494);
  EXPECT_EQ(doc["params"]["M"], 373592);
  const Outcome c = invoke({"check", "--input", out, "--assignment", out + ".cert.json"});
  EXPECT_EQ(json::parse(c.out)["equalsOverall"], true);
}

TEST_F(CliTest, GenerateRejectsInvalidSources) {
  EXPECT_EQ(invoke({"generate", "partition", "--c", "1,2", "--output", path("g.json")}).code, kInvalidInput);
  EXPECT_EQ(invoke({"generate", "partition", "--c", "1,1,2", "--witness", "1", "--output", path("g.json")}).code,
            kInvalidInput);
  EXPECT_EQ(invoke({"generate", "threepartition", "--d", "3,3,2,4,3,3", "--m", "2", "--output",
                    path("g.json")}).code,
            kInvalidInput);
}

TEST_F(CliTest, RandomIsDeterministic) {
  const auto one = path("r1.json");
  const auto two = path("r2.json");
  for (const auto& p : {one, two}) {
    ASSERT_EQ(invoke({"random", "--n", "5", "--m", "2", "--max-value", "6", "--seed", "1", "--output", p}).code, kOk);
  }
  EXPECT_EQ(io::read_file(one), io::read_file(two));
  EXPECT_EQ(io::read_file(one), "{\"m\":2,\"a\":[6,2,1,6,4],\"b\":[3,4,4,1,5]}\n");

  const Outcome other = invoke({"random", "--n", "5", "--m", "2", "--max-value", "6", "--seed", "2"});
  EXPECT_NE(other.out, io::read_file(one));
  EXPECT_EQ(invoke({"random", "--n", "3", "--m", "2", "--max-value", "1", "--seed", "4"}).out,
            "{\"m\":2,\"a\":[1,1,1],\"b\":[1,1,1]}\n");
  EXPECT_EQ(invoke({"random", "--n", "0", "--m", "2", "--max-value", "1", "--seed", "4"}).code, kInvalidInput);
}

TEST_F(CliTest, BenchAgrees) {
  const Outcome two = invoke({"bench", "--n-range", "2..8", "--m-set", "2", "--max-value", "6", "--trials", "20"});
  ASSERT_EQ(two.code, kOk) << two.err;
  std::istringstream lines(two.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,m,S,T,dpStates,dpMs,bruteMs,agree");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(line.ends_with(",true")) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 7 * 20);

  const Outcome three = invoke({"bench", "--n-range", "2..7", "--m-set", "3", "--max-value", "6", "--trials", "5"});
  ASSERT_EQ(three.code, kOk) << three.err;
  EXPECT_EQ(three.out.find("false"), std::string::npos);
}

TEST_F(CliTest, BenchWithoutTrials) {
  const Outcome r = invoke({"bench", "--n-range", "2..4", "--m-set", "2", "--trials", "0"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "n,m,S,T,dpStates,dpMs,bruteMs,agree\n");
}

TEST_F(CliTest, BenchBudgetExceeded) {
  EXPECT_EQ(invoke({"bench", "--n-range", "6..6", "--m-set", "3", "--trials", "1", "--enumeration-budget", "10"}).code,
            kBudgetExceeded);
}

TEST_F(CliTest, UnknownFlagIsInvalidInput) {
  EXPECT_EQ(invoke({"solve", "--bogus"}).code, kInvalidInput);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

}  // namespace
}  // namespace mapfp::cli

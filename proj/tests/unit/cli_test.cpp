#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dirred/network_io.hpp"

namespace dirred::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = DIRRED_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dirred_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

const std::string chain2 = kData + "/chain2.json";
const std::string chain2_y1 = kData + "/chain2_y1.json";
const std::string collider = kData + "/collider.json";

TEST_F(CliTest, ValidateOk) {
  const Result r = run_cli({"validate", "--net", chain2});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "validate: ok (2 nodes, 1 arcs)\n");
}

TEST_F(CliTest, ValidateReportsNormalization) {
  const std::string net = write("bad.json", R"({"version": "dirred-network/1", "nodes": [
    {"id": "X", "outcomes": ["0","1"], "parents": [], "table": [0.7, 0.3]},
    {"id": "Y", "outcomes": ["0","1"], "parents": ["X"], "table": [0.5, 0.6, 0.1, 0.9]}]})");
  const Result r = run_cli({"validate", "--net", net});
  EXPECT_EQ(r.code, kValidationFailure);
  EXPECT_NE(r.out.find("error normalization [Y]"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"marginal", "--net", net}).code, kValidationFailure);
}

TEST_F(CliTest, MalformedFileIsValidationFailure) {
  const std::string net = write("short.json", R"({"version": "dirred-network/1", "nodes": [
    {"id": "X", "outcomes": ["0","1"], "parents": [], "table": [0.7]}]})");
  const Result r = run_cli({"moralize", "--net", net});
  EXPECT_EQ(r.code, kValidationFailure);
  EXPECT_NE(r.err.find("'X'"), std::string::npos) << r.err;
}

TEST_F(CliTest, CycleIsStructuralError) {
  const std::string net = write("cycle.json", R"({"version": "dirred-network/1", "nodes": [
    {"id": "A", "outcomes": ["0","1"], "parents": ["B"], "table": [0.5, 0.5, 0.5, 0.5]},
    {"id": "B", "outcomes": ["0","1"], "parents": ["A"], "table": [0.5, 0.5, 0.5, 0.5]}]})");
  EXPECT_EQ(run_cli({"validate", "--net", net}).code, kStructuralError);
  const Result r = run_cli({"propagate", "--net", net});
  EXPECT_EQ(r.code, kStructuralError);
  EXPECT_NE(r.err.find("cycle"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({"marginal"}).code, kStructuralError);
  EXPECT_EQ(run_cli({"frobnicate", "--net", chain2}).code, kStructuralError);
  EXPECT_EQ(run_cli({"prereverse", "--net", chain2, "--order", "X,Q"}).code, kStructuralError);
  EXPECT_EQ(run_cli({"prereverse", "--net", chain2, "--order", "X"}).code, kStructuralError);
  EXPECT_EQ(run_cli({"validate", "--net", (dir_ / "missing.json").string()}).code, kStructuralError);
}

TEST_F(CliTest, OracleCapIsResourceError) {
  std::string text = R"({"version": "dirred-network/1", "nodes": [)";
  for (int k = 0; k < 21; ++k) {
    if (k) text += ",";
    text += R"({"id": "N)" + std::to_string(k) + R"(", "outcomes": ["0","1"], "parents": [], "table": [0.5, 0.5]})";
  }
  text += "]}";
  const std::string net = write("wide.json", text);
  EXPECT_EQ(run_cli({"oracle-check", "--net", net}).code, kResourceError);
  EXPECT_EQ(run_cli({"evprob", "--net", net}).code, kOk);
}

TEST_F(CliTest, Moralize) {
  const Result r = run_cli({"moralize", "--net", collider});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("X1 - X2 (added)"), std::string::npos) << r.out;
}

TEST_F(CliTest, PrereverseCollider) {
  const Result r = run_cli({"prereverse", "--net", collider, "--order", "X3,X1,X2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("arcs: 3\n  X1 -> X2\n  X3 -> X1\n  X3 -> X2\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, McsDefaultsToFileOrder) {
  const Result r = run_cli({"mcs", "--net", collider});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("order: X1,X2,X3\nperfect: yes\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, OracleCheckChain2) {
  const Result r = run_cli({"oracle-check", "--net", chain2, "--evidence", chain2_y1});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "evidence probability 0.41; max deviation < 1e-9\n");
}

TEST_F(CliTest, MarginalAndEvprob) {
  Result r = run_cli({"marginal", "--net", chain2, "--evidence", chain2_y1, "--node", "X"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "X: 0=0.3414634146 1=0.6585365854\n");
  r = run_cli({"evprob", "--net", chain2, "--evidence", chain2_y1});
  EXPECT_EQ(r.out, "evidence probability 0.41\n");
}

TEST_F(CliTest, ReportCollider) {
  const Result r = run_cli({"report", "--net", collider, "--order", "X3,X1,X2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("clique containment: yes"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("max table: 8 cells over {X1,X2,X3}"), std::string::npos) << r.out;
}

TEST_F(CliTest, JsonTraceReplaysToReportedNetwork) {
  const std::string evidence = write("ev.json", R"({"observations": [{"node": "X1", "value": "1"}],
    "likelihoods": [{"id": "K", "parents": ["X3"], "table": [0.3, 0.9]}]})");
  for (const char* command : {"propagate", "report"}) {
    const Result r = run_cli({command, "--net", collider, "--evidence", evidence, "--order", "X3,X1,X2", "--json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    std::ifstream in(collider);
    const Pid start = parse_network(std::string(std::istreambuf_iterator<char>(in), {}));
    const Pid replayed = replay(start, trace_from_json(doc["trace"]));
    EXPECT_EQ(network_to_json(replayed), doc["network"]) << command;
  }
}

TEST_F(CliTest, RandomTest) {
  const Result r = run_cli({"random-test", "--seed", "5", "--count", "40"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "random-test: 40 pipelines, seed 5; max deviation < 1e-9; containment failures 0\n");
}

TEST_F(CliTest, IdenticalRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"validate", "--net", collider},
      {"moralize", "--net", collider, "--json"},
      {"chordal", "--net", collider, "--order", "X3,X1,X2"},
      {"mcs", "--net", collider, "--json"},
      {"fillin", "--net", collider, "--order", "X2,X3,X1"},
      {"prereverse", "--net", collider, "--order", "X3,X1,X2", "--json"},
      {"absorb", "--net", chain2, "--evidence", chain2_y1},
      {"propagate", "--net", chain2, "--evidence", chain2_y1, "--json"},
      {"marginal", "--net", chain2, "--evidence", chain2_y1},
      {"evprob", "--net", chain2, "--evidence", chain2_y1, "--json"},
      {"oracle-check", "--net", chain2, "--evidence", chain2_y1},
      {"report", "--net", collider, "--order", "X3,X1,X2", "--json"},
      {"random-test", "--seed", "9", "--count", "10"},
  };
  for (const auto& args : commands) {
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    EXPECT_EQ(a.code, kOk) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_FALSE(a.out.empty()) << args[0];
  }
}

}  // namespace
}  // namespace dirred::cli

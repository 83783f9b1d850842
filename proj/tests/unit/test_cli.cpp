#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "bcml/cli.hpp"
#include "bcml/error.hpp"

namespace bcml::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "bcml");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Parse, Bicomplex) {
  EXPECT_EQ(parse_bicomplex("0.5").x0(), 0.5);
  const Bicomplex x = parse_bicomplex("1,2,3,4");
  EXPECT_EQ(x.x3(), 4.0);
  EXPECT_THROW(parse_bicomplex("1,2"), Error);
  EXPECT_THROW(parse_bicomplex("abc"), Error);
  EXPECT_THROW(parse_bicomplex("nan"), Error);
}

TEST(Parse, Idempotent) {
  const IdempotentPair p = parse_idempotent("1,2;3,-4").idempotent();
  EXPECT_DOUBLE_EQ(p.first.real(), 1.0);
  EXPECT_DOUBLE_EQ(p.first.imag(), 2.0);
  EXPECT_DOUBLE_EQ(p.second.imag(), -4.0);
  EXPECT_THROW(parse_idempotent("1,2"), Error);
  EXPECT_THROW(parse_idempotent("1;2"), Error);
}

TEST(Parse, Sweep) {
  const Sweep s = parse_sweep("a:0:1:5");
  EXPECT_EQ(s.name, "a");
  EXPECT_EQ(s.steps, 5);
  EXPECT_EQ(s.value(0), 0.0);
  EXPECT_EQ(s.value(2), 0.5);
  EXPECT_EQ(s.value(4), 1.0);
  EXPECT_THROW(parse_sweep("b:0:1:5"), Error);
  EXPECT_THROW(parse_sweep("a:0:1:1"), Error);
  EXPECT_THROW(parse_sweep("a:1:0:5"), Error);
  EXPECT_THROW(parse_sweep("a:0:1:2.5"), Error);
  EXPECT_THROW(parse_sweep("a:0:1"), Error);
}

TEST(Eval, Values) {
  Result r = call({"eval", "mgf", "--a", "0.5", "--alpha", "0.5", "--t", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "{\"x0\":1,\"x1\":0,\"x2\":0,\"x3\":0}\n");

  r = call({"eval", "ml", "--alpha", "1", "--xi", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "{\"x0\":2.7182818284590451,\"x1\":0,\"x2\":0,\"x3\":0}\n");

  r = call({"eval", "mean", "--a", "0.5", "--alpha", "0.5"});
  EXPECT_EQ(r.out, "{\"x0\":0.83333333333333337,\"x1\":0,\"x2\":0,\"x3\":0}\n");

  r = call({"eval", "moment", "--a", "0", "--alpha", "0.7", "--r", "4"});
  EXPECT_EQ(r.out, "{\"x0\":24,\"x1\":0,\"x2\":0,\"x3\":0}\n");
}

TEST(Eval, IdempotentOutput) {
  const Result r = call({"eval", "pdf", "--a-idem", "0.2,0;0.7,0", "--alpha", "1", "--xi", "1", "--idempotent"});
  ASSERT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].rfind("{\"xi1\":{\"re\":", 0), 0u);
  EXPECT_NE(out[1].find("\"xi2\""), std::string::npos);
}

TEST(Eval, ExitCodes) {
  EXPECT_EQ(call({"eval", "mean", "--a", "-1", "--alpha", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "mean", "--a", "0.5", "--alpha", "0"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "moment", "--a", "0.5", "--alpha", "1", "--r", "5"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "mgf", "--a", "0.5", "--alpha", "1", "--t", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "nonsense"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "mean", "--alpha", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"eval", "mean", "--a", "1", "--a-idem", "1,0;1,0", "--alpha", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"--tol", "-1", "eval", "ml", "--alpha", "1", "--xi", "1"}).code, kExitInvalidInput);
  const Result nc = call({"--max-terms", "5", "eval", "ml", "--alpha", "0.5", "--xi", "3"});
  EXPECT_EQ(nc.code, kExitNotConverged);
  EXPECT_NE(nc.err.find("did not converge"), std::string::npos);
}

TEST(Eval, AnalyticContinuationNote) {
  const Result r = call({"eval", "mgf", "--a", "0.8", "--alpha", "2", "--t", "0.5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("analytic continuation"), std::string::npos);
}

TEST(Eval, JsonOutput) {
  const Result r = call({"--json", "-", "eval", "pdf", "--a", "0.5", "--alpha", "1", "--xi", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  ASSERT_GE(out.size(), 2u);
  const auto j = nlohmann::json::parse(r.out.substr(r.out.find('\n') + 1));
  EXPECT_EQ(j["what"], "pdf");
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Grid, OneDimensional) {
  const Result r = call({"grid", "mean", "--p1", "a:0:1:3", "--alpha", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0], "p1,x0,x1,x2,x3");
  EXPECT_EQ(out[1], "0,1,0,0,0");
  EXPECT_EQ(out[3], "1,0.5,0,0,0");
}

TEST(Grid, TwoDimensionalRowOrder) {
  const Result r = call({"grid", "moment", "--r", "1", "--p1", "a:0:1:2", "--p2", "alpha:1:2:3"});
  ASSERT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 7u);
  EXPECT_EQ(out[0], "p1,p2,x0,x1,x2,x3");
  EXPECT_EQ(out[1].rfind("0,1,", 0), 0u);
  EXPECT_EQ(out[2].rfind("0,1.5,", 0), 0u);
  EXPECT_EQ(out[4].rfind("1,1,", 0), 0u);
  // a = 1, alpha = 2: mean is 1 - 2 / 2 = 0.
  EXPECT_EQ(out[6], "1,2,0,0,0,0");
}

TEST(Grid, DeterministicAcrossThreadCounts) {
  const std::vector<std::string> args{"grid", "pdf", "--p1", "xi:0:5:40", "--p2", "alpha:0.3:2:7", "--a", "0.4"};
  setenv("BCML_THREADS", "1", 1);
  const Result a = call(args);
  setenv("BCML_THREADS", "8", 1);
  const Result b = call(args);
  unsetenv("BCML_THREADS");
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Grid, FailingRowsAreNan) {
  const Result r = call({"grid", "mean", "--p1", "alpha:0:1:3", "--a", "0.5"});
  ASSERT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  EXPECT_EQ(out[1], "0,nan,nan,nan,nan");
  EXPECT_NE(r.err.find("warning: row 0"), std::string::npos);
  EXPECT_EQ(call({"grid", "mean", "--p1", "a:-3:-2:3", "--alpha", "1"}).code, kExitOk);
  // -1 is not on the grid above; this one hits it at every row.
  EXPECT_EQ(call({"grid", "mean", "--p1", "alpha:-1:0:2", "--a", "0.5"}).code, kExitInvalidInput);
}

TEST(Grid, Validation) {
  EXPECT_EQ(call({"grid", "mean", "--alpha", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"grid", "mean", "--p1", "t:0:1:3", "--a", "0.5", "--alpha", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"grid", "mean", "--p1", "a:0:1:3"}).code, kExitInvalidInput);
  EXPECT_EQ(call({"grid", "mean", "--p1", "a:0:1:3", "--p2", "a:0:1:3", "--alpha", "1"}).code, kExitInvalidInput);
}

TEST(Grid, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "bcml_cli_grid.csv";
  const Result r = call({"grid", "mean", "--p1", "a:0:1:3", "--alpha", "1", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "p1,x0,x1,x2,x3");
  std::filesystem::remove(path);
}

TEST(Verify, GridFiles) {
  const auto good = temp_file("bcml_cli_good.json",
                              R"({"points":[{"label":"p","a":0.5,"alpha":{"x0":0.5}}]})");
  Result r = call({"verify", "--grid", good.string(), "--summary"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);

  const auto invalid = temp_file("bcml_cli_invalid.json", R"({"points":[{"label":"bad","a":-1,"alpha":1}]})");
  r = call({"verify", "--grid", invalid.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("1 skipped"), std::string::npos);

  const auto broken = temp_file("bcml_cli_broken.json", "{\"points\": [");
  EXPECT_EQ(call({"verify", "--grid", broken.string()}).code, kExitInvalidInput);
  EXPECT_EQ(call({"verify", "--grid", "/nonexistent.json"}).code, kExitInvalidInput);
  for (const auto& p : {good, invalid, broken}) std::filesystem::remove(p);
}

TEST(Environment, Threads) {
  setenv("BCML_THREADS", "3", 1);
  EXPECT_EQ(threads_from_environment(), 3u);
  setenv("BCML_THREADS", "x", 1);
  EXPECT_EQ(threads_from_environment(), 0u);
  unsetenv("BCML_THREADS");
  EXPECT_EQ(threads_from_environment(), 0u);
}

}  // namespace
}  // namespace bcml::cli

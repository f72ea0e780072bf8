#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>

#include "blockpart/error.hpp"
#include "blockpart/io.hpp"
#include "blockpart/json.hpp"

namespace blockpart {
namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json first_line(const std::string& s) {
  return nlohmann::json::parse(s.substr(0, s.find('\n')));
}

TEST(ParseInput, Scalars) {
  std::istringstream in("0.5\n1\n# comment\n\n1  # trailing\n+0.5\n");
  const auto seq = parse_input(in, {});
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[3], 0.5);
}

TEST(ParseInput, Vectors) {
  std::istringstream in("1,0\n0, 1\n");
  InputFormat f;
  f.vector = true;
  f.p = 2.0;
  const auto seq = parse_input(in, f);
  ASSERT_TRUE(seq.is_vector());
  EXPECT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq.dim(), 2u);
  EXPECT_EQ(seq.vector(1)[1], 1.0);
}

TEST(ParseInput, Errors) {
  std::istringstream bound("1.5\n");
  EXPECT_THROW(parse_input(bound, {}), BoundError);
  std::istringstream garbage("0.5\nabc\n");
  try {
    parse_input(garbage, {});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_input(empty, {}), ValidationError);
  std::istringstream ragged("1,0\n1\n");
  InputFormat f;
  f.vector = true;
  EXPECT_THROW(parse_input(ragged, f), ParseError);
}

TEST(IstreamSource, ReadsLazily) {
  std::istringstream in("0.1\n\n0.2\nx\n");
  IstreamSource src(in);
  EXPECT_EQ(src.next(), 0.1);
  EXPECT_EQ(src.next(), 0.2);
  EXPECT_THROW(src.next(), ParseError);
}

TEST(Cli, PartitionRoundTrip) {
  const auto r = run_cli({"partition", "--k", "3"}, "0.5\n1\n1\n0.5\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  EXPECT_EQ(j["termination"], "converged");
  EXPECT_LE(j["spread"].get<double>(), 1.0);
  const auto p = partition_from_json(j, 4);
  EXPECT_EQ(p.cuts.k(), 3u);
  EXPECT_EQ(as_json(p), j);
}

TEST(Cli, PartitionLpAndInit) {
  const auto r = run_cli({"partition", "--k", "2", "--functional", "lp:2"}, "1,0\n0,1\n0.6,0.8\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto r2 = run_cli({"partition", "--k", "3", "--init", "4,4"}, "1\n1\n1\n1\n");
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_GT(first_line(r2.out)["iterations"].get<int>(), 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"partition", "--k", "2"}, "1.5\n").code, 3);
  EXPECT_EQ(run_cli({"partition", "--k", "2"}, "0.5\nabc\n").code, 2);
  EXPECT_EQ(run_cli({"partition"}, "0.5\n").code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}, "").code, 1);
  EXPECT_EQ(run_cli({"partition", "--k", "2", "--functional", "abs-sum"}, "0.5\n").code, 3);
  EXPECT_EQ(run_cli({"partition", "--k", "2", "--functional", "nope"}, "0.5\n").code, 3);
  EXPECT_EQ(run_cli({"oracle", "--k", "12"}, std::string(60, '1') + "\n").code, 3);
  EXPECT_EQ(run_cli({"stream", "--target", "5"}, "0.1\n0.1\n").code, 3);
  EXPECT_EQ(run_cli({"spread2", "--k", "2", "--functional", "sum"}, "-0.5\n1\n").code, 3);
  const auto bad = run_cli({"partition", "--k", "2"}, "0.5\nabc\n");
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
}

TEST(Cli, Preprocess) {
  const auto r = run_cli({"preprocess"}, "1\n-0.5\n0.7\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  EXPECT_EQ(j["sizes"], (nlohmann::json{0.5, 0.7}));
  EXPECT_EQ(j["merges"], 1);
  const auto s = run_cli({"preprocess", "--symmetric", "--k", "3"}, "0.5\n-1\n-1\n0.5\n");
  ASSERT_EQ(s.code, 0) << s.err;
  const auto js = first_line(s.out);
  EXPECT_TRUE(js["negated"].get<bool>());
  EXPECT_LE(js["partition"]["spread"].get<double>(), 1.0 + 1e-9);
  EXPECT_EQ(run_cli({"preprocess"}, "0.5\n-1\n").code, 3);
}

TEST(Cli, StreamWritesBlocksAndPlan) {
  std::string input;
  for (int i = 0; i < 50; ++i) input += "0.6\n";
  const auto r = run_cli({"stream", "--target", "1", "--emit-limit", "5"}, input);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("start") && j.contains("end") && j.contains("size"));
    ++count;
  }
  EXPECT_EQ(count, 5);
  EXPECT_EQ(first_line(r.err)["plan"]["branch"], "constructive");
}

TEST(Cli, Spread2AndCheckAndOracle) {
  const auto r = run_cli({"spread2", "--k", "2", "--functional", "abs-sum"}, "1\n-1\n1\n-1\n1\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(first_line(r.out)["spread"].get<double>(), 2.0 + 1e-6);

  const auto c = run_cli({"check", "--functional", "abs-sum"}, "1\n-1\n");
  ASSERT_EQ(c.code, 0) << c.err;
  const auto jc = first_line(c.out);
  EXPECT_FALSE(jc["holds_ii"].get<bool>());
  EXPECT_TRUE(jc["holds_iii"].get<bool>());
  EXPECT_EQ(jc["witness_ii"]["first"], (nlohmann::json{0, 1}));

  const auto o = run_cli({"oracle", "--k", "3"}, "0.5\n1\n1\n0.5\n");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(first_line(o.out)["min_spread"], 1.0);
  EXPECT_EQ(first_line(o.out)["partitions_examined"], 15);
}

TEST(Cli, Bench) {
  const auto r = run_cli({"bench", "--grid", "10:2,20:2", "--trials", "20", "--seed", "3"}, "");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  ASSERT_EQ(j["cells"].size(), 2u);
  EXPECT_LE(j["cells"][0]["max_iterations"].get<std::size_t>(), 8u * 2 * 1000);
  EXPECT_EQ(run_cli({"bench", "--grid", "10-2"}, "").code, 3);

  const auto one = run_cli({"bench", "--grid", "1:3", "--trials", "5"}, "");
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_LE(first_line(one.out)["cells"][0]["max_iterations"].get<std::size_t>(), 2u);
}

TEST(Cli, BenchIsDeterministic) {
  const auto a = run_cli({"bench", "--grid", "8:2,16:4", "--trials", "10", "--seed", "9"}, "");
  const auto b = run_cli({"bench", "--grid", "8:2,16:4", "--trials", "10", "--seed", "9"}, "");
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace blockpart

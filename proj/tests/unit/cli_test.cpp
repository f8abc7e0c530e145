#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "io.hpp"

namespace wassarb::cli {
namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wassarb_cli_" + name)).string();
}

TEST(Io, ParseSchedule) {
  EXPECT_EQ(parse_schedule("1,2,3"), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(parse_schedule("1:8:x2"), (std::vector<double>{1, 2, 4, 8}));
  EXPECT_EQ(parse_schedule("0:1:n3"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_THROW(parse_schedule(""), ParseError);
  EXPECT_THROW(parse_schedule("1:2:q3"), ParseError);
}

TEST(Io, DistributionRoundTrip) {
  const auto d = make_distribution((Mat(2, 2) << 1, 2, 3, 4).finished(), (Vec(2) << 0.25, 0.75).finished());
  const auto back = read_distribution_csv(distribution_to_csv(d));
  EXPECT_TRUE(back.support == d.support);
  EXPECT_TRUE(back.pmf == d.pmf);
}

TEST(Cli, CurveCsv) {
  const auto r = call({"curve", "--fixture", "binomial", "--side", "na-weak", "--deltas", "0,1.5", "--format", "csv"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 12), "delta,value\n");
  EXPECT_NE(r.out.find("1.5,1\n"), std::string::npos) << r.out;
}

TEST(Cli, CurveWritesPortfolioCompanion) {
  const std::string path = temp_path("curve.csv");
  const auto r = call({"curve", "--fixture", "binomial", "--deltas", "0.5", "--format", "csv", "--out", path});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(read_file(path + ".json"));
  EXPECT_EQ(j["points"][0]["w"].size(), 2u);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}

TEST(Cli, DistJson) {
  const auto r = call({"dist", "--fixture", "pairs", "--w", "100,-67.5", "--delta", "31"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 13u);
  EXPECT_EQ(j["split_origin"], 2);
}

TEST(Cli, CallAndMarkowitz) {
  auto r = call({"call", "--values", "100", "--strike", "100", "--delta", "0.02"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["price"].get<double>(), 0.2, 1e-12);

  const std::string path = temp_path("returns.csv");
  write_file(path, "a,b\n1.01,0.99\n0.98,1.02\n1.00,1.00\n");
  r = call({"markowitz", "--returns", path, "--phi", "0.5,0.5", "--delta", "0.01", "--format", "csv"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 10), "objective\n");
  std::filesystem::remove(path);
}

TEST(Cli, OtBetweenFiles) {
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
  write_file(a, "prob,x1\n0.5,0\n0.5,1\n");
  write_file(b, "prob,x1\n1,2\n");
  for (std::string m : {"exact", "sinkhorn", "ipot"}) {
    const auto r = call({"ot", "--a", a, "--b", b, "--method", m});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["cost"].get<double>(), 1.5, 1e-6) << m;
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, ConfigFileAndOverride) {
  const std::string cfg = temp_path("cfg.txt");
  write_file(cfg, "# quick run\nstarts = 2\nformat = csv\n");
  auto r = call({"--config", cfg, "curve", "--fixture", "binomial", "--deltas", "0.1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 5), "delta");
  r = call({"--config", cfg, "--format", "json", "curve", "--fixture", "binomial", "--deltas", "0.1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out[0], '{');
  write_file(cfg, "bogus = 1\n");
  EXPECT_EQ(call({"--config", cfg, "curve", "--fixture", "binomial", "--deltas", "0.1"}).code, kParseError);
  std::filesystem::remove(cfg);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, kParseError);
  EXPECT_EQ(call({"curve", "--fixture", "binomial"}).code, kParseError);
  EXPECT_EQ(call({"curve", "--fixture", "binomial", "--deltas", ""}).code, kParseError);
  EXPECT_EQ(call({"curve", "--fixture", "nope", "--deltas", "1"}).code, kParseError);
  EXPECT_EQ(call({"radius", "--fixture", "binomial", "--side", "na-weak", "--alpha", "0.5"}).code, kParseError);
  EXPECT_EQ(call({"dist", "--fixture", "binomial", "--w", "0,0", "--delta", "1"}).code, kParseError);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST(Cli, FixtureMatchesShippedData) {
  const auto r = call({"fixture", "--name", "binomial"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "stock,bond\n300,100\n310,100.5\n290,99.5\n");
}

}  // namespace
}  // namespace wassarb::cli

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fqm/cli.hpp"

using namespace fqm;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = execute(args, out, err);
  return {code, out.str(), err.str()};
}

json strip_timing(json doc) {
  doc.erase("timing");
  return doc;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fqm_test_" + name)).string();
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.command = "moment";
  c.target = "fourth";
  c.p = 3;
  c.e = 2;
  c.degQ = 3;
  c.k = 1;
  c.l = 2;
  c.seed = 42;
  c.decompose = true;
  c.tolerance = 1e-7;
  c.workers = 3;
  c.format = "csv";
  c.output = "x.csv";
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  EXPECT_EQ(config_from_json(json::parse(config_to_json(c).dump())), c);
  EXPECT_EQ(config_from_json(config_to_json(RunConfig{})), RunConfig{});
  json bad = config_to_json(c);
  bad.erase("seed");
  EXPECT_THROW(config_from_json(bad), std::invalid_argument);
  bad = config_to_json(c);
  bad["k"] = "one";
  EXPECT_THROW(config_from_json(bad), std::invalid_argument);
}

TEST(Config, ParseArgs) {
  const RunConfig c = parse_args({"moment", "second", "--q", "9", "--deg", "3", "--k", "1", "--seed", "7"});
  EXPECT_EQ(c.command, "moment");
  EXPECT_EQ(c.target, "second");
  EXPECT_EQ(c.p, 3u);
  EXPECT_EQ(c.e, 2);
  EXPECT_EQ(c.degQ, 3);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_FALSE(c.l.has_value());
  EXPECT_THROW(parse_args({"moment", "third", "--p", "3"}), std::invalid_argument);
  EXPECT_THROW(parse_args({"moment", "first", "--bogus"}), std::invalid_argument);
  EXPECT_THROW(parse_args({"moment", "first", "--q", "3", "--p", "3"}), std::invalid_argument);
  std::string help;
  EXPECT_TRUE(parse_args({"--help"}, &help).command.empty());
  EXPECT_NE(help.find("moment"), std::string::npos);
}

TEST(Execute, SecondMomentSmokeRun) {
  const CliRun r = run_cli({"moment", "second", "--p", "3", "--e", "1", "--deg", "4", "--k", "1", "--seed", "7", "--format",
                         "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  for (const char* key : {"config", "results", "timing", "version"}) EXPECT_TRUE(doc.contains(key)) << key;
  const json& res = doc["results"];
  for (const char* key : {"computed", "oracle", "predicted", "ratio"}) EXPECT_TRUE(res.contains(key)) << key;
  EXPECT_TRUE(res["computed"].contains("re"));
  EXPECT_TRUE(res["computed"].contains("im"));
  EXPECT_TRUE(res["passed"].get<bool>());
}

TEST(Execute, ExitCodes) {
  EXPECT_EQ(run_cli({"verify", "orthogonality", "--p", "3", "--e", "1", "--deg", "2"}).code, 0);
  const CliRun big = run_cli({"moment", "fourth", "--p", "2", "--e", "1", "--deg", "30", "--decompose"});
  EXPECT_EQ(big.code, 1);
  EXPECT_FALSE(big.err.empty());
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"moment", "first", "--p", "3", "--deg", "3", "--k", "0"}).code, 1);
  EXPECT_EQ(run_cli({"prime", "--p", "3", "--Q", "2+t^2"}).code, 1);
  // a tolerance nothing can meet turns the identity check red
  const CliRun strict = run_cli({"moment", "second", "--p", "3", "--deg", "4", "--k", "2", "--tolerance", "-1"});
  EXPECT_EQ(strict.code, 2);
  EXPECT_FALSE(json::parse(strict.out)["results"]["passed"].get<bool>());
}

TEST(Execute, DeterministicAcrossWorkerCounts) {
  const CliRun a = run_cli({"moment", "fourth", "--p", "3", "--deg", "3", "--k", "1", "--decompose", "--workers", "1"});
  const CliRun b = run_cli({"moment", "fourth", "--p", "3", "--deg", "3", "--k", "1", "--decompose", "--workers", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  json da = strip_timing(json::parse(a.out));
  json db = strip_timing(json::parse(b.out));
  da["config"].erase("workers");
  db["config"].erase("workers");
  EXPECT_EQ(da.dump(), db.dump());
  const CliRun c = run_cli({"moment", "fourth", "--p", "3", "--deg", "3", "--k", "1", "--decompose", "--workers", "1"});
  EXPECT_EQ(strip_timing(json::parse(a.out)).dump(), strip_timing(json::parse(c.out)).dump());
}

TEST(Execute, ReplayFromSerializedConfig) {
  const std::string report = temp_path("report.json");
  const CliRun first = run_cli({"moment", "first", "--p", "5", "--deg", "3", "--k", "2", "--seed", "3", "-o", report});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_TRUE(first.out.empty());
  std::ifstream f(report);
  const json doc = json::parse(f);
  EXPECT_FALSE(std::filesystem::exists(report + ".tmp"));

  RunConfig cfg = config_from_json(doc["config"]);
  cfg.output.clear();
  std::ostringstream out, err;
  ASSERT_EQ(run(cfg, out, err), 0);
  EXPECT_EQ(strip_timing(json::parse(out.str()))["results"].dump(), doc["results"].dump());

  const CliRun replay = run_cli({"--config", report});
  EXPECT_EQ(replay.code, 0) << replay.err;
  std::remove(report.c_str());
}

TEST(Execute, CsvAndConstants) {
  const CliRun csv = run_cli({"report", "second", "--p", "3", "--deg", "2", "--deg-max", "4", "--k", "1", "--format", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "q,degQ,k,l,computed,predicted,ratio");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 3);

  const CliRun dm = run_cli({"constants", "dm", "--max", "2", "--exact"});
  ASSERT_EQ(dm.code, 0) << dm.err;
  const json d1 = json::parse(dm.out)["results"]["rows"][1]["dm"];
  EXPECT_EQ(d1["exact"], "61/10080");
  EXPECT_NEAR(d1["decimal"].get<double>(), 0.00605158730, 1e-11);

  const CliRun fourth = run_cli({"constants", "fourth", "--k", "0", "--l", "0"});
  EXPECT_EQ(json::parse(fourth.out)["results"]["coefficient"]["exact"], "1/12");
}

TEST(Execute, LfuncAndPrime) {
  const CliRun l = run_cli({"lfunc", "--p", "3", "--Q", "1+t^2", "--j", "1", "--k", "1"});
  ASSERT_EQ(l.code, 0) << l.err;
  const json res = json::parse(l.out)["results"];
  EXPECT_EQ(res["L"].size(), 2u);
  EXPECT_NEAR(std::hypot(res["W"]["re"].get<double>(), res["W"]["im"].get<double>()), 1.0, 1e-12);
  EXPECT_EQ(run_cli({"lfunc", "--p", "3", "--Q", "1+t^2", "--j", "0"}).code, 1);

  const CliRun p = run_cli({"prime", "--q", "4", "--deg", "2", "--seed", "1"});
  ASSERT_EQ(p.code, 0) << p.err;
  const json g = json::parse(p.out)["results"];
  EXPECT_EQ(g["phi"], 15);
  EXPECT_EQ(g["sample_dlogs"][0]["dlog"], 0);
}

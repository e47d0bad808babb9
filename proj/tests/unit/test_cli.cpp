#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rulemine/cli.hpp"
#include "unit/support.hpp"

using namespace rulemine;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "rulemine");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> d5_args(const std::string& sub) {
  return {sub, "--input", fixtures::source_path("data/d5.csv"), "--schema",
          fixtures::source_path("configs/d5.schema.json")};
}

cli::RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "rulemine");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  auto cfg = cli::parse_args(static_cast<int>(argv.size()), argv.data(), out);
  EXPECT_TRUE(cfg.has_value());
  return *cfg;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST(CliConfig, DefaultsArePublishedParameters) {
  const auto cfg = parse({"rules", "--input", "x.csv", "--schema", "s.json"});
  EXPECT_EQ(cfg.thresholds.min_support, 0.03);
  EXPECT_EQ(cfg.thresholds.min_confidence, 0.60);
  EXPECT_EQ(cfg.thresholds.min_lift, 1.50);
  EXPECT_EQ(cfg.algorithms, (std::vector<Algorithm>{Algorithm::apriori}));
  EXPECT_EQ(parse({"compare"}).algorithms, (std::vector<Algorithm>{Algorithm::apriori, Algorithm::fpgrowth}));
}

TEST(CliConfig, MinorityPreset) {
  const auto cfg = parse({"rules", "--minority-preset"});
  EXPECT_EQ(cfg.thresholds.min_support, 0.02);
  EXPECT_EQ(cfg.thresholds.min_confidence, 0.60);
  EXPECT_EQ(cfg.thresholds.min_lift, 1.50);
  const auto clash = run({"rules", "--minority-preset", "--min-support", "0.05"});
  EXPECT_EQ(clash.code, cli::kExitConfig);
}

TEST(CliConfig, ExplicitValues) {
  const auto cfg = parse({"compare", "--algorithm", "fpgrowth,oracle", "--min-confidence", "0.7", "--repeat", "3",
                          "--max-len", "4", "--format", "json", "--strict-lift"});
  EXPECT_EQ(cfg.algorithms, (std::vector<Algorithm>{Algorithm::fpgrowth, Algorithm::oracle}));
  EXPECT_EQ(cfg.thresholds.min_confidence, 0.7);
  EXPECT_TRUE(cfg.thresholds.strict_lift);
  EXPECT_EQ(cfg.repeat, 3u);
  EXPECT_EQ(cfg.max_len, 4u);
  EXPECT_EQ(cfg.format, OutputFormat::json);
}

TEST(CliMine, D5SixItemsets) {
  auto args = d5_args("mine");
  args.insert(args.end(), {"--min-support", "0.6", "--format", "csv"});
  const auto r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "items,count,support\na_1,4,0.8\nb_1,4,0.8\nc_1,4,0.8\na_1;b_1,3,0.6\na_1;c_1,3,0.6\nb_1;c_1,3,0.6\n");
}

TEST(CliMine, FpgrowthMatchesApriori) {
  auto args = d5_args("mine");
  args.insert(args.end(), {"--min-support", "0.6"});
  auto fp = args;
  fp.insert(fp.end(), {"--algorithm", "fpgrowth"});
  EXPECT_EQ(run(args).out, run(fp).out);
}

TEST(CliMine, MissingInputNamesPath) {
  const auto r = run({"mine", "--input", "/nonexistent/answers.csv", "--schema",
                      fixtures::source_path("configs/d5.schema.json")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("/nonexistent/answers.csv"), std::string::npos) << r.err;
}

TEST(CliMine, SupportOutOfRange) {
  auto args = d5_args("mine");
  args.insert(args.end(), {"--min-support", "1.5"});
  const auto r = run(args);
  EXPECT_EQ(r.code, cli::kExitConfig);
  EXPECT_NE(r.err.find("min-support must be in (0,1]"), std::string::npos) << r.err;
}

TEST(CliRules, D5TopSix) {
  auto args = d5_args("rules");
  args.insert(args.end(), {"--min-lift", "0", "--top", "6"});
  const auto r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(occurrences(r.out, "75.0"), 6u) << r.out;
  EXPECT_EQ(occurrences(r.out, "\n"), 7u);
}

TEST(CliRules, DefaultsGiveNoD5Rules) {
  auto args = d5_args("rules");
  args.insert(args.end(), {"--format", "csv"});
  const auto r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(occurrences(r.out, "\n"), 1u);
}

TEST(CliRules, RepeatedRunsAreByteIdentical) {
  auto args = d5_args("rules");
  args.insert(args.end(), {"--min-lift", "0", "--format", "json", "--threads", "2"});
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliRules, UnknownTag) {
  auto args = d5_args("rules");
  args.insert(args.end(), {"--tags", "majority"});
  EXPECT_EQ(run(args).code, cli::kExitConfig);
}

TEST(CliRules, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "rulemine_cli_rules.csv";
  auto args = d5_args("rules");
  args.insert(args.end(), {"--min-lift", "0", "--format", "csv", "--output", path.string()});
  const auto r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(occurrences(text.str(), "\n"), 10u);  // header + 6 pair rules + 3 triple rules
  std::filesystem::remove(path);
}

TEST(CliCompare, D5IdenticalRows) {
  auto args = d5_args("compare");
  args.insert(args.end(), {"--min-support", "0.6", "--min-lift", "0", "--format", "csv"});
  const auto r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::string apriori;
  std::string fpgrowth;
  std::getline(in, header);
  std::getline(in, apriori);
  std::getline(in, fpgrowth);
  EXPECT_EQ(apriori.rfind("apriori,", 0), 0u) << r.out;
  EXPECT_EQ(fpgrowth.rfind("fpgrowth,", 0), 0u);
  // Rule counts and averages (columns 2-7) agree; only the name and time differ.
  const auto body = [](const std::string& row) {
    std::vector<std::string> cells;
    std::istringstream in(row);
    for (std::string cell; std::getline(in, cell, ',');) {
      cells.push_back(cell);
    }
    return std::vector<std::string>(cells.begin() + 1, cells.begin() + 7);
  };
  EXPECT_EQ(body(apriori), body(fpgrowth));
  EXPECT_EQ(body(apriori)[0], "6");
}

TEST(CliCompare, UnknownAlgorithm) {
  auto args = d5_args("compare");
  args.insert(args.end(), {"--algorithm", "apriori,eclat"});
  EXPECT_EQ(run(args).code, cli::kExitConfig);
}

TEST(CliVerify, D5Equivalent) {
  auto args = d5_args("verify");
  args.insert(args.end(), {"--min-support", "0.6"});
  const auto r = run(args);
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("status: equivalent"), std::string::npos);
}

TEST(CliVerify, RandomSuite) {
  const auto r = run({"verify", "--random", "5", "--seed", "3"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("runs: 30"), std::string::npos) << r.out;
}

TEST(CliIngest, WritesCleanedRows) {
  const auto r = run(d5_args("ingest"));
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "a,b,c");
}

TEST(Cli, UnknownSubcommandAndHelp) {
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitConfig);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

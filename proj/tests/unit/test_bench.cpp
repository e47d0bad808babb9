#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "rulemine/bench.hpp"
#include "unit/support.hpp"

using namespace rulemine;

namespace {

ItemDictionary d5_dict() {
  ItemDictionary d;
  d.intern("a_1");
  d.intern("b_1");
  d.intern("c_1");
  return d;
}

}  // namespace

TEST(Compare, D5BothAlgorithmsAgree) {
  const auto report = compare(fixtures::d5(), d5_dict(), Thresholds{0.6, 0.60, 0.0}, CategoryConfig{},
                              {Algorithm::apriori, Algorithm::fpgrowth});
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].algorithm, "apriori");
  EXPECT_EQ(report.rows[1].algorithm, "fpgrowth");
  for (const auto& row : report.rows) {
    EXPECT_FALSE(row.error.has_value());
    EXPECT_EQ(row.rules, 6u);
    EXPECT_DOUBLE_EQ(*row.avg_support, 0.6);
    EXPECT_DOUBLE_EQ(*row.avg_confidence, 0.75);
    EXPECT_DOUBLE_EQ(*row.avg_lift, 0.9375);
    EXPECT_EQ(row.equity_rules, 0u);
  }
}

TEST(Compare, SingleAlgorithm) {
  const auto report = compare(fixtures::d5(), d5_dict(), Thresholds{}, CategoryConfig{}, {Algorithm::oracle});
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].rules, 0u);
  EXPECT_FALSE(report.rows[0].avg_lift.has_value());
}

TEST(Compare, NoAlgorithms) {
  EXPECT_THROW(compare(fixtures::d5(), d5_dict(), Thresholds{}, CategoryConfig{}, {}), ConfigError);
}

TEST(Compare, FailingRunIsReportedPerRow) {
  const TransactionDb wide({{0, 21}}, 22);
  ItemDictionary dict;
  for (int i = 0; i < 22; ++i) {
    dict.intern("x_" + std::to_string(i));
  }
  const auto report = compare(wide, dict, Thresholds{}, CategoryConfig{}, {Algorithm::oracle, Algorithm::apriori});
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_TRUE(report.rows[0].error.has_value());
  EXPECT_FALSE(report.rows[1].error.has_value());
}

TEST(Compare, WrittenReportCarriesParityNote) {
  const auto report = compare(fixtures::d5(), d5_dict(), Thresholds{0.6, 0.60, 0.0}, CategoryConfig{},
                              {Algorithm::apriori, Algorithm::fpgrowth});
  std::ostringstream out;
  report.write(out, OutputFormat::table);
  EXPECT_NE(out.str().find("only time may differ"), std::string::npos);
}

TEST(Algorithms, Names) {
  for (auto a : {Algorithm::apriori, Algorithm::fpgrowth, Algorithm::oracle}) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  EXPECT_THROW(parse_algorithm("eclat"), ConfigError);
}

TEST(TimeRun, NoOp) {
  const double s = time_run([] {});
  EXPECT_GE(s, 0.0);
  EXPECT_LT(s, 0.01);
}

TEST(TimeRun, Sleep) {
  const double s = time_run([] { std::this_thread::sleep_for(std::chrono::milliseconds(10)); });
  EXPECT_GE(s, 0.010);
  EXPECT_LE(s, 0.050);
}

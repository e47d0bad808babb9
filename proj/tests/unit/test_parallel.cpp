#include <gtest/gtest.h>

#include "rulemine/apriori.hpp"
#include "rulemine/fpgrowth.hpp"
#include "rulemine/random_db.hpp"
#include "rulemine/rules.hpp"

using namespace rulemine;

// The OpenMP kernels must be bit-identical to their serial reference paths
// whatever the team size.

namespace {

class ThreadCounts : public ::testing::TestWithParam<int> {
protected:
  void SetUp() override { set_thread_count(GetParam()); }
  void TearDown() override { set_thread_count(0); }
};

TransactionDb sample(std::uint64_t seed) {
  return random_db({.n_transactions = 700, .n_items = 18, .density = 0.35, .seed = seed});
}

}  // namespace

TEST_P(ThreadCounts, CountItems) {
  const auto db = sample(3);
  EXPECT_EQ(count_items(db, Execution::parallel), count_items(db, Execution::serial));
}

TEST_P(ThreadCounts, CountCandidates) {
  const auto db = sample(4);
  std::vector<Itemset> singles;
  for (ItemId i = 0; i < db.n_items(); ++i) {
    singles.push_back({i});
  }
  const auto pairs = generate_candidates(singles, 2);
  const auto triples = generate_candidates(pairs, 3);
  EXPECT_EQ(count_candidates(triples, db, Execution::parallel), count_candidates(triples, db, Execution::serial));
}

TEST_P(ThreadCounts, Miners) {
  const auto db = sample(5);
  MinerConfig par{0.05, std::nullopt, Execution::parallel};
  MinerConfig ser{0.05, std::nullopt, Execution::serial};
  EXPECT_EQ(mine_apriori(db, par), mine_apriori(db, ser));
  EXPECT_EQ(mine_fpgrowth(db, par), mine_fpgrowth(db, ser));
}

TEST_P(ThreadCounts, RuleGenerationIsDeterministic) {
  const auto db = sample(6);
  const auto frequent = mine_apriori(db, MinerConfig{0.05, std::nullopt, Execution::serial});
  Thresholds t{0.05, 0.3, 1.0};
  const auto once = generate_rules(frequent, db, t);
  set_thread_count(1);
  EXPECT_EQ(generate_rules(frequent, db, t), once);
}

INSTANTIATE_TEST_SUITE_P(Teams, ThreadCounts, ::testing::Values(1, 2, 4));

TEST(ThreadCount, SetAndRestore) {
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1);
}

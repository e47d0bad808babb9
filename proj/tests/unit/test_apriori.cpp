#include <gtest/gtest.h>

#include <set>

#include "rulemine/apriori.hpp"
#include "rulemine/random_db.hpp"
#include "unit/support.hpp"

using namespace rulemine;
using fixtures::d5;
using fixtures::naive_count;

namespace {

// Every nonempty subset of the universe with its scanned count.
std::vector<FrequentItemset> enumerate(const TransactionDb& db, double min_support) {
  std::vector<FrequentItemset> out;
  const Count cut = min_count(min_support, db.n_transactions());
  for (std::uint32_t mask = 1; mask < (1u << db.n_items()); ++mask) {
    Itemset s;
    for (ItemId i = 0; i < db.n_items(); ++i) {
      if (mask >> i & 1u) {
        s.push_back(i);
      }
    }
    const Count c = naive_count(db, s);
    if (c >= cut) {
      out.push_back({s, c, static_cast<double>(c) / static_cast<double>(db.n_transactions())});
    }
  }
  normalize(out);
  return out;
}

}  // namespace

TEST(Apriori, D5AtSixtyPercent) {
  const auto got = mine_apriori(d5(), MinerConfig{0.6});
  EXPECT_EQ(got, enumerate(d5(), 0.6));
  ASSERT_EQ(got.size(), 6u);
  const std::vector<std::pair<Itemset, Count>> want{{{0}, 4}, {{1}, 4}, {{2}, 4}, {{0, 1}, 3}, {{0, 2}, 3}, {{1, 2}, 3}};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(got[i].items, want[i].first);
    EXPECT_EQ(got[i].count, want[i].second);
    EXPECT_DOUBLE_EQ(got[i].support, static_cast<double>(want[i].second) / 5.0);
  }
}

TEST(Apriori, D5AtFullSupportIsEmpty) { EXPECT_TRUE(mine_apriori(d5(), MinerConfig{1.0}).empty()); }

TEST(Apriori, SingleTransaction) {
  const TransactionDb db({{0}}, 1);
  const auto got = mine_apriori(db, MinerConfig{1.0});
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].items, (Itemset{0}));
  EXPECT_EQ(got[0].count, 1u);
}

TEST(Apriori, EmptyDatabase) {
  try {
    (void)mine_apriori(TransactionDb{}, MinerConfig{0.5});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "empty transaction database");
  }
}

TEST(Apriori, RejectsBadConfig) {
  EXPECT_THROW(mine_apriori(d5(), MinerConfig{0.0}), ConfigError);
  EXPECT_THROW(mine_apriori(d5(), MinerConfig{1.01}), ConfigError);
  EXPECT_THROW(mine_apriori(d5(), MinerConfig{0.5, 0}), ConfigError);
}

TEST(Apriori, LengthCap) {
  const auto got = mine_apriori(d5(), MinerConfig{0.2, 2});
  for (const auto& f : got) {
    EXPECT_LE(f.items.size(), 2u);
  }
  auto full = enumerate(d5(), 0.2);
  std::erase_if(full, [](const FrequentItemset& f) { return f.items.size() > 2; });
  EXPECT_EQ(got, full);
}

TEST(Candidates, AllPairs) {
  EXPECT_EQ(generate_candidates({{0}, {1}, {2}}, 2), (std::vector<Itemset>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Candidates, JoinKeepsClosedTriple) {
  EXPECT_EQ(generate_candidates({{0, 1}, {0, 2}, {1, 2}}, 3), (std::vector<Itemset>{{0, 1, 2}}));
}

TEST(Candidates, PruneDropsTripleWithInfrequentSubset) {
  EXPECT_TRUE(generate_candidates({{0, 1}, {0, 2}}, 3).empty());
}

TEST(Candidates, EmptyInput) { EXPECT_TRUE(generate_candidates({}, 2).empty()); }

// Pruning may only remove candidates that cannot be frequent.
TEST(Candidates, PruningNeverLosesAFrequentSet) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto db = random_db({.n_transactions = 120, .n_items = 9, .density = 0.45, .seed = seed});
    const auto truth = enumerate(db, 0.1);
    std::vector<Itemset> level;
    for (const auto& f : truth) {
      if (f.items.size() == 1) {
        level.push_back(f.items);
      }
    }
    for (std::size_t k = 2; !level.empty(); ++k) {
      const auto pruned = generate_candidates(level, k);
      const auto full = generate_candidates_unpruned(level, k);
      const std::set<Itemset> full_set(full.begin(), full.end());
      std::vector<Itemset> next;
      for (const auto& f : truth) {
        if (f.items.size() == k) {
          next.push_back(f.items);
          EXPECT_TRUE(std::binary_search(pruned.begin(), pruned.end(), f.items)) << "seed " << seed;
          EXPECT_TRUE(full_set.contains(f.items));
        }
      }
      for (const auto& c : pruned) {
        EXPECT_TRUE(full_set.contains(c));
      }
      level = std::move(next);
    }
  }
}

TEST(CountSupport, D5Triple) {
  const auto got = count_support({{0, 1, 2}}, d5());
  EXPECT_EQ(got.at({0, 1, 2}), 2u);
  EXPECT_EQ(got.at({0, 1, 2}), naive_count(d5(), {0, 1, 2}));
}

TEST(CountSupport, EmptyCandidates) { EXPECT_TRUE(count_support({}, d5()).empty()); }

TEST(CountSupport, OneTransaction) {
  const TransactionDb db({{0}}, 1);
  EXPECT_EQ(count_support({{0}}, db).at({0}), 1u);
}

TEST(CountSupport, MatchesScanOnRandomData) {
  const auto db = random_db({.n_transactions = 300, .n_items = 12, .density = 0.4, .seed = 9});
  std::vector<Itemset> singles;
  for (ItemId i = 0; i < db.n_items(); ++i) {
    singles.push_back({i});
  }
  const auto pairs = generate_candidates(singles, 2);
  const auto triples = generate_candidates(pairs, 3);
  for (const auto* level : {&pairs, &triples}) {
    const auto counts = count_candidates(*level, db, Execution::serial);
    for (std::size_t i = 0; i < level->size(); ++i) {
      ASSERT_EQ(counts[i], naive_count(db, (*level)[i]));
    }
  }
}

TEST(Apriori, MatchesEnumerationOnRandomData) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto db = random_db({.n_transactions = 200, .n_items = 10, .density = 0.3, .seed = seed});
    for (double s : {0.02, 0.1, 0.3}) {
      EXPECT_EQ(mine_apriori(db, MinerConfig{s}), enumerate(db, s)) << "seed " << seed << " support " << s;
    }
  }
}

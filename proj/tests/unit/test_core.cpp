#include <gtest/gtest.h>

#include <random>

#include "rulemine/core.hpp"
#include "unit/support.hpp"

using namespace rulemine;

namespace {

Record rec(std::initializer_list<std::pair<const char*, const char*>> fields) {
  Record r;
  for (const auto& [a, v] : fields) {
    r.push_back({a, v});
  }
  return r;
}

}  // namespace

TEST(Dictionary, InternIsStable) {
  ItemDictionary d;
  EXPECT_EQ(d.intern("q9_No"), 0u);
  EXPECT_EQ(d.intern("q9_Yes"), 1u);
  EXPECT_EQ(d.intern("q9_No"), 0u);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.label(1), "q9_Yes");
  ASSERT_NE(d.find("q9_Yes"), nullptr);
  EXPECT_EQ(*d.find("q9_Yes"), 1u);
  EXPECT_EQ(d.find("q9_Maybe"), nullptr);
}

TEST(Dictionary, AttributeSplitsAtFirstUnderscore) {
  ItemDictionary d;
  const ItemId id = d.intern("q40_Not_too confident");
  EXPECT_EQ(d.attribute(id), "q40");
  EXPECT_EQ(d.value(id), "Not_too confident");
}

TEST(Dictionary, UnknownIdNamesTheId) {
  ItemDictionary d;
  d.intern("x_1");
  try {
    (void)d.label(7);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }
}

TEST(TransactionDb, RejectsUnsortedAndOutOfRange) {
  EXPECT_THROW(TransactionDb({{1, 0}}, 2), DataError);
  EXPECT_THROW(TransactionDb({{0, 0}}, 2), DataError);
  EXPECT_THROW(TransactionDb({{0, 2}}, 2), DataError);
  EXPECT_NO_THROW(TransactionDb({{}, {0, 1}}, 2));
}

TEST(TransactionDb, FromUnsortedCanonicalizes) {
  const auto db = TransactionDb::from_unsorted({{2, 0, 2}, {1}}, 3);
  EXPECT_EQ(db[0], (Itemset{0, 2}));
  EXPECT_EQ(db[1], (Itemset{1}));
}

TEST(Encode, SingleAttributeTwoValues) {
  const std::vector<Record> rows{rec({{"q9", "No"}}), rec({{"q9", "No"}}), rec({{"q9", "Yes"}})};
  const std::vector<std::string> order{"q9"};
  const auto enc = encode_rows(rows, order);
  EXPECT_EQ(enc.dictionary.labels(), (std::vector<std::string>{"q9_No", "q9_Yes"}));
  EXPECT_EQ(enc.db.transactions(), (std::vector<Itemset>{{0}, {0}, {1}}));
}

TEST(Encode, EmptyInput) {
  const std::vector<std::string> order{"q9"};
  const auto enc = encode_rows({}, order);
  EXPECT_EQ(enc.dictionary.size(), 0u);
  EXPECT_EQ(enc.db.n_transactions(), 0u);
}

TEST(Encode, WorkedDatasetD5) {
  const std::vector<Record> rows{rec({{"a", "1"}, {"b", "1"}, {"c", "1"}}), rec({{"a", "1"}, {"b", "1"}}),
                                 rec({{"a", "1"}, {"c", "1"}}), rec({{"b", "1"}, {"c", "1"}}),
                                 rec({{"a", "1"}, {"b", "1"}, {"c", "1"}})};
  const std::vector<std::string> order{"a", "b", "c"};
  const auto enc = encode_rows(rows, order);
  EXPECT_EQ(enc.db.n_items(), 3u);
  EXPECT_EQ(enc.db, fixtures::d5());
  EXPECT_EQ(decode_itemset(enc.dictionary, {0, 2}), (std::vector<std::string>{"a_1", "c_1"}));
  EXPECT_TRUE(decode_itemset(enc.dictionary, {}).empty());
  EXPECT_TRUE(attribute_exclusive(enc.db, enc.dictionary));
}

TEST(Encode, RejectsDuplicateAttribute) {
  const std::vector<Record> rows{rec({{"q9", "No"}, {"q9", "Yes"}})};
  const std::vector<std::string> order{"q9"};
  EXPECT_THROW(encode_rows(rows, order), DataError);
}

TEST(Encode, RejectsUnlistedAttribute) {
  const std::vector<Record> rows{rec({{"q5", "Easy"}})};
  const std::vector<std::string> order{"q9"};
  EXPECT_THROW(encode_rows(rows, order), DataError);
}

TEST(Encode, IdsFollowAttributeOrderWithinRow) {
  const std::vector<Record> rows{rec({{"b", "x"}, {"a", "y"}})};
  const std::vector<std::string> order{"a", "b"};
  const auto enc = encode_rows(rows, order);
  EXPECT_EQ(enc.dictionary.labels(), (std::vector<std::string>{"a_y", "b_x"}));
}

TEST(MinCount, DecimalThresholdsAreNotInflated) {
  EXPECT_EQ(min_count(0.6, 5), 3u);
  EXPECT_EQ(min_count(0.03, 100), 3u);
  EXPECT_EQ(min_count(0.03, 101), 4u);
  EXPECT_EQ(min_count(1.0, 7), 7u);
  EXPECT_EQ(min_count(0.01, 1), 1u);
  EXPECT_EQ(min_count(0.7, 10), 7u);
}

TEST(MinCount, MeetsFractionAgreesWithMinCount) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pct(1, 100);
  std::uniform_int_distribution<std::size_t> size(1, 2000);
  for (int trial = 0; trial < 20000; ++trial) {
    const double f = pct(rng) / 100.0;
    const std::size_t n = size(rng);
    const Count cut = min_count(f, n);
    for (Count have : {Count{0}, cut - 1, cut, cut + 1}) {
      ASSERT_EQ(meets_fraction(have, f, n), have >= cut) << f << " " << n << " " << have;
    }
  }
}

TEST(MinCount, ValidateSupportRange) {
  EXPECT_THROW(validate_min_support(0.0), ConfigError);
  EXPECT_THROW(validate_min_support(1.5), ConfigError);
  EXPECT_NO_THROW(validate_min_support(1.0));
}

TEST(Ordering, LengthThenLexicographic) {
  std::vector<FrequentItemset> v{{{0, 2}, 1, 0}, {{1}, 1, 0}, {{0, 1}, 1, 0}, {{0}, 1, 0}};
  normalize(v);
  EXPECT_EQ(v[0].items, (Itemset{0}));
  EXPECT_EQ(v[1].items, (Itemset{1}));
  EXPECT_EQ(v[2].items, (Itemset{0, 1}));
  EXPECT_EQ(v[3].items, (Itemset{0, 2}));
}

TEST(Subset, SortedInclusion) {
  const Itemset t{1, 3, 5};
  EXPECT_TRUE(is_subset(Itemset{}, t));
  EXPECT_TRUE(is_subset(Itemset{1, 5}, t));
  EXPECT_FALSE(is_subset(Itemset{2}, t));
}

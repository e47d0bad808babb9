#pragma once

// Brute-force oracle and cross-checks between the two miners and the
// oracle. The oracle shares no code path with either miner: it enumerates
// every subset of the item universe as a bitmask and counts it by a full
// scan over bitmask-encoded transactions.

#include <functional>
#include <string>
#include <vector>

#include "rulemine/core.hpp"
#include "rulemine/random_db.hpp"
#include "rulemine/rules.hpp"

namespace rulemine {

struct OracleLimits {
  std::size_t max_items = 20;
  std::size_t max_transactions = 5000;
};

/// Throws ConfigError when max_items > 24.
void validate(const OracleLimits& limits);

/// True when `db` fits inside `limits`.
bool within(const TransactionDb& db, const OracleLimits& limits);

/// Count of every subset (indexed by bitmask over item ids) by full scan.
/// Throws ConfigError("oracle limits exceeded") outside `limits`.
std::vector<Count> subset_counts(const TransactionDb& db, const OracleLimits& limits = {});

std::vector<FrequentItemset> brute_force_frequent(const TransactionDb& db, double min_support,
                                                  const OracleLimits& limits = {});

/// Every disjoint nonempty (X, Y) over the universe, counted directly and
/// filtered by `t`, in sort_rules order.
std::vector<AssociationRule> brute_force_rules(const TransactionDb& db, const Thresholds& t,
                                               const OracleLimits& limits = {});

using Miner = std::function<std::vector<FrequentItemset>(const TransactionDb&, double min_support)>;

struct MinerSet {
  Miner apriori;
  Miner fpgrowth;
};

/// The production miners (parallel execution).
MinerSet default_miners();

struct EquivalenceReport {
  bool equivalent = true;
  bool oracle_checked = false;
  std::size_t itemsets = 0;
  std::size_t rules = 0;
  std::string divergence;  // first difference found, empty when equivalent

  [[nodiscard]] std::string to_text() const;
};

/// Mines `db` with both miners (and the oracle when within `limits`),
/// generates rules from each at max(min_support, t.min_support), and
/// reports the first difference. Item ids are shown through `dict` when given.
EquivalenceReport check_equivalence(const TransactionDb& db, double min_support, const Thresholds& t,
                                    const OracleLimits& limits = {}, const MinerSet& miners = default_miners(),
                                    const ItemDictionary* dict = nullptr);

/// First difference between two itemset lists, or empty when identical.
std::string diff_itemsets(const std::vector<FrequentItemset>& lhs, std::string_view lhs_name,
                          const std::vector<FrequentItemset>& rhs, std::string_view rhs_name,
                          const ItemDictionary* dict = nullptr);

/// First difference between two rule lists, or empty when identical.
std::string diff_rules(const std::vector<AssociationRule>& lhs, std::string_view lhs_name,
                       const std::vector<AssociationRule>& rhs, std::string_view rhs_name,
                       const ItemDictionary* dict = nullptr);

/// Support thresholds swept by the randomized equivalence suite.
inline constexpr double kSuiteSupports[] = {0.01, 0.05, 0.1, 0.25, 0.5, 1.0};

/// Database `index` of the randomized suite: N in [1, 500], items in
/// [1, 15], density in {0.1, 0.2, ..., 0.9}, all drawn from
/// std::mt19937_64(seed * 1000003 + index).
RandomDbSpec suite_db_spec(std::uint64_t seed, std::size_t index);

}  // namespace rulemine

#pragma once

// Level-wise Apriori miner with join-and-prune candidate generation and
// first-item-indexed support counting.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rulemine/core.hpp"
#include "rulemine/parallel.hpp"

namespace rulemine {

struct MinerConfig {
  double min_support = 0.03;
  std::optional<std::size_t> max_itemset_len;  // unbounded when empty
  Execution execution = Execution::parallel;
};

/// Throws ConfigError for a support outside (0,1] or a zero length cap.
void validate(const MinerConfig& cfg);

/// All itemsets with count >= ceil(min_support * N), in normalized order.
/// Throws DataError("empty transaction database") when db has no rows.
std::vector<FrequentItemset> mine_apriori(const TransactionDb& db, const MinerConfig& cfg);

/// Apriori-gen: joins (k-1)-sets sharing their first k-2 items, then drops
/// candidates with an infrequent (k-1)-subset. `frequent` must be sorted
/// lexicographically and hold sets of size k-1. Output is sorted and unique.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent, std::size_t k);

/// Every k-combination of the items appearing in `frequent`, with no join
/// or prune. Exponential; used to check that pruning changes nothing.
std::vector<Itemset> generate_candidates_unpruned(const std::vector<Itemset>& frequent, std::size_t k);

/// Occurrence count of each candidate, aligned with `candidates`.
/// Candidates must be sorted lexicographically, unique and equal-length.
std::vector<Count> count_candidates(const std::vector<Itemset>& candidates, const TransactionDb& db,
                                    Execution execution = Execution::parallel);

/// Map form of count_candidates. Absent candidates map to 0.
std::map<Itemset, Count> count_support(const std::vector<Itemset>& candidates, const TransactionDb& db);

/// Per-item occurrence counts over the whole universe.
std::vector<Count> count_items(const TransactionDb& db, Execution execution = Execution::parallel);

}  // namespace rulemine

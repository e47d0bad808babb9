#include "rulemine/apriori.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include <omp.h>

namespace rulemine {

void validate(const MinerConfig& cfg) {
  validate_min_support(cfg.min_support);
  if (cfg.max_itemset_len && *cfg.max_itemset_len == 0) {
    throw ConfigError("max itemset length must be >= 1");
  }
}

namespace {

// Candidates grouped by first item. `order` lists candidate indices so that
// all candidates starting with item i sit in order[begin[i] .. begin[i+1]).
struct FirstItemIndex {
  std::vector<std::size_t> order;
  std::vector<std::size_t> begin;
  std::vector<std::size_t> empty_candidates;

  FirstItemIndex(const std::vector<Itemset>& candidates, std::size_t n_items) : begin(n_items + 1, 0) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (candidates[c].empty()) {
        empty_candidates.push_back(c);
      } else if (candidates[c].front() < n_items) {
        ++begin[candidates[c].front() + 1];
      }
    }
    std::partial_sum(begin.begin(), begin.end(), begin.begin());
    order.resize(begin.back());
    std::vector<std::size_t> fill(begin.begin(), begin.end() - 1);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!candidates[c].empty() && candidates[c].front() < n_items) {
        order[fill[candidates[c].front()]++] = c;
      }
    }
  }
};

class Bitmap {
public:
  explicit Bitmap(std::size_t n_bits) : words_((n_bits + 63) / 64, 0) {}
  void set(ItemId i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(ItemId i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  [[nodiscard]] bool test(ItemId i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

private:
  std::vector<std::uint64_t> words_;
};

// Adds the occurrences found in transactions [first, last) into `counts`.
void count_range(const std::vector<Itemset>& candidates, const FirstItemIndex& index, const TransactionDb& db,
                 std::size_t first, std::size_t last, std::vector<Count>& counts) {
  Bitmap present(db.n_items());
  for (std::size_t t = first; t < last; ++t) {
    const Itemset& items = db[t];
    for (ItemId i : items) {
      present.set(i);
    }
    for (ItemId head : items) {
      for (std::size_t p = index.begin[head]; p < index.begin[head + 1]; ++p) {
        const std::size_t c = index.order[p];
        const Itemset& cand = candidates[c];
        bool contained = true;
        for (std::size_t k = 1; k < cand.size(); ++k) {
          if (cand[k] >= db.n_items() || !present.test(cand[k])) {
            contained = false;
            break;
          }
        }
        counts[c] += contained ? 1 : 0;
      }
    }
    for (ItemId i : items) {
      present.reset(i);
    }
  }
}

}  // namespace

std::vector<Count> count_candidates(const std::vector<Itemset>& candidates, const TransactionDb& db,
                                    Execution execution) {
  std::vector<Count> counts(candidates.size(), 0);
  if (candidates.empty()) {
    return counts;
  }
  const FirstItemIndex index(candidates, db.n_items());
  const std::size_t n = db.n_transactions();

  if (execution == Execution::serial) {
    count_range(candidates, index, db, 0, n, counts);
  } else {
#pragma omp parallel
    {
      std::vector<Count> local(candidates.size(), 0);
      const auto threads = static_cast<std::size_t>(omp_get_num_threads());
      const auto me = static_cast<std::size_t>(omp_get_thread_num());
      const std::size_t chunk = (n + threads - 1) / threads;
      const std::size_t first = std::min(n, me * chunk);
      const std::size_t last = std::min(n, first + chunk);
      count_range(candidates, index, db, first, last, local);
#pragma omp critical(rulemine_count_merge)
      for (std::size_t c = 0; c < counts.size(); ++c) {
        counts[c] += local[c];
      }
    }
  }
  for (std::size_t c : index.empty_candidates) {
    counts[c] = n;
  }
  return counts;
}

std::map<Itemset, Count> count_support(const std::vector<Itemset>& candidates, const TransactionDb& db) {
  const auto counts = count_candidates(candidates, db);
  std::map<Itemset, Count> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    out[candidates[c]] += counts[c];
  }
  return out;
}

std::vector<Count> count_items(const TransactionDb& db, Execution execution) {
  const std::size_t n_items = db.n_items();
  std::vector<Count> counts(n_items, 0);
  const auto& txs = db.transactions();
  const auto n = static_cast<std::int64_t>(txs.size());
  if (execution == Execution::serial) {
    for (const Itemset& t : txs) {
      for (ItemId i : t) {
        ++counts[i];
      }
    }
    return counts;
  }
#pragma omp parallel
  {
    std::vector<Count> local(n_items, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < n; ++t) {
      for (ItemId i : txs[static_cast<std::size_t>(t)]) {
        ++local[i];
      }
    }
#pragma omp critical(rulemine_item_merge)
    for (std::size_t i = 0; i < n_items; ++i) {
      counts[i] += local[i];
    }
  }
  return counts;
}

std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent_in, std::size_t k) {
  std::vector<Itemset> out;
  if (frequent_in.empty() || k < 2) {
    return out;
  }
  const std::vector<Itemset>* frequent = &frequent_in;
  std::vector<Itemset> sorted;
  if (!std::is_sorted(frequent_in.begin(), frequent_in.end())) {
    sorted = frequent_in;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    frequent = &sorted;
  }
  const auto& prev = *frequent;
  const std::size_t prefix = k - 2;

  Itemset subset(k - 1);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = i + 1; j < prev.size(); ++j) {
      if (!std::equal(prev[i].begin(), prev[i].begin() + static_cast<std::ptrdiff_t>(prefix), prev[j].begin())) {
        break;  // sorted input: no later set shares the prefix either
      }
      Itemset cand = prev[i];
      cand.push_back(prev[j].back());

      // Dropping either of the last two items gives prev[j] or prev[i].
      bool keep = true;
      for (std::size_t drop = 0; drop + 2 < k && keep; ++drop) {
        std::size_t w = 0;
        for (std::size_t p = 0; p < k; ++p) {
          if (p != drop) {
            subset[w++] = cand[p];
          }
        }
        keep = std::binary_search(prev.begin(), prev.end(), subset);
      }
      if (keep) {
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

std::vector<Itemset> generate_candidates_unpruned(const std::vector<Itemset>& frequent, std::size_t k) {
  std::set<ItemId> universe;
  for (const Itemset& s : frequent) {
    universe.insert(s.begin(), s.end());
  }
  const std::vector<ItemId> items(universe.begin(), universe.end());
  std::vector<Itemset> out;
  if (k == 0 || k > items.size()) {
    return out;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Itemset cand(k);
    for (std::size_t p = 0; p < k; ++p) {
      cand[p] = items[idx[p]];
    }
    out.push_back(std::move(cand));
    std::size_t p = k;
    while (p > 0 && idx[p - 1] == items.size() - k + (p - 1)) {
      --p;
    }
    if (p == 0) {
      break;
    }
    ++idx[p - 1];
    for (std::size_t q = p; q < k; ++q) {
      idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

std::vector<FrequentItemset> mine_apriori(const TransactionDb& db, const MinerConfig& cfg) {
  validate(cfg);
  if (db.empty()) {
    throw DataError("empty transaction database");
  }
  const std::size_t n = db.n_transactions();
  const Count cutoff = min_count(cfg.min_support, n);
  const auto to_support = [n](Count c) { return static_cast<double>(c) / static_cast<double>(n); };

  std::vector<FrequentItemset> result;
  std::vector<Itemset> level;

  const auto item_counts = count_items(db, cfg.execution);
  for (ItemId i = 0; i < item_counts.size(); ++i) {
    if (item_counts[i] >= cutoff) {
      level.push_back({i});
      result.push_back({{i}, item_counts[i], to_support(item_counts[i])});
    }
  }

  for (std::size_t k = 2; !level.empty(); ++k) {
    if (cfg.max_itemset_len && k > *cfg.max_itemset_len) {
      break;
    }
    auto candidates = generate_candidates(level, k);
    const auto counts = count_candidates(candidates, db, cfg.execution);
    level.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] >= cutoff) {
        result.push_back({candidates[c], counts[c], to_support(counts[c])});
        level.push_back(std::move(candidates[c]));
      }
    }
  }
  return result;
}

}  // namespace rulemine

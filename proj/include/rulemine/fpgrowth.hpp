#pragma once

// FP-Growth: prefix-tree compression of the transaction database followed
// by recursive conditional-pattern-base mining.

#include <cstdint>
#include <optional>
#include <vector>

#include "rulemine/apriori.hpp"
#include "rulemine/core.hpp"

namespace rulemine {

class FPTree {
public:
  using NodeRef = std::uint32_t;
  static constexpr NodeRef kRoot = 0;
  static constexpr NodeRef kNone = UINT32_MAX;

  struct Node {
    ItemId item;
    Count count;
    NodeRef parent;
    NodeRef first_child;
    NodeRef next_sibling;
    NodeRef next_same;  // header chain
  };

  struct HeaderEntry {
    ItemId item;
    Count total;
    NodeRef head;
    NodeRef tail;
  };

  /// Empty tree over `ordered_items`, which fixes the item order: paths
  /// list items in the order they appear here. `universe` bounds item ids.
  FPTree(std::vector<ItemId> ordered_items, std::size_t universe);

  /// Inserts `path` (already in item order, only tree items) with `weight`.
  void insert(const std::vector<ItemId>& path, Count weight);

  [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
  /// One entry per item, in item order (descending global frequency).
  [[nodiscard]] const std::vector<HeaderEntry>& header() const noexcept { return header_; }
  [[nodiscard]] std::vector<ItemId> item_order() const;
  /// Position of `item` in the item order, or kNone when absent.
  [[nodiscard]] NodeRef rank(ItemId item) const;
  [[nodiscard]] std::size_t universe() const noexcept { return rank_.size(); }
  /// True when only the root exists.
  [[nodiscard]] bool empty() const noexcept { return nodes_.size() == 1; }
  /// True when no node has more than one child.
  [[nodiscard]] bool single_path() const;

  /// Items of the ancestors of `node` (excluding the root), nearest first.
  [[nodiscard]] std::vector<ItemId> prefix_path(NodeRef node) const;

private:
  std::vector<Node> nodes_;
  std::vector<HeaderEntry> header_;
  std::vector<NodeRef> rank_;  // item id -> header index
};

/// Drops items below ceil(min_support * N) and inserts every transaction's
/// surviving items in descending frequency order (ties by ascending id).
/// Throws DataError("empty transaction database") for an empty db.
FPTree build_fptree(const TransactionDb& db, double min_support, Execution execution = Execution::parallel);

/// Mines all frequent itemsets from a tree built at the same `min_support`.
/// Output follows the same normalized order as mine_apriori.
std::vector<FrequentItemset> mine_fptree(const FPTree& tree, double min_support, std::size_t n_transactions,
                                         std::optional<std::size_t> max_itemset_len = std::nullopt,
                                         Execution execution = Execution::parallel);

/// build_fptree followed by mine_fptree.
std::vector<FrequentItemset> mine_fpgrowth(const TransactionDb& db, const MinerConfig& cfg);

}  // namespace rulemine

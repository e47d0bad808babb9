#include "rulemine/fpgrowth.hpp"

#include <algorithm>
#include <cstdint>

namespace rulemine {

FPTree::FPTree(std::vector<ItemId> ordered_items, std::size_t universe) : rank_(universe, kNone) {
  nodes_.push_back({0, 0, kNone, kNone, kNone, kNone});
  header_.reserve(ordered_items.size());
  for (ItemId item : ordered_items) {
    if (item >= universe || rank_[item] != kNone) {
      throw ConfigError("FP-tree item order must list distinct items inside the universe");
    }
    rank_[item] = static_cast<NodeRef>(header_.size());
    header_.push_back({item, 0, kNone, kNone});
  }
}

void FPTree::insert(const std::vector<ItemId>& path, Count weight) {
  NodeRef at = kRoot;
  for (ItemId item : path) {
    NodeRef child = nodes_[at].first_child;
    while (child != kNone && nodes_[child].item != item) {
      child = nodes_[child].next_sibling;
    }
    if (child == kNone) {
      child = static_cast<NodeRef>(nodes_.size());
      nodes_.push_back({item, 0, at, kNone, nodes_[at].first_child, kNone});
      nodes_[at].first_child = child;
      HeaderEntry& h = header_[rank_[item]];
      if (h.tail == kNone) {
        h.head = child;
      } else {
        nodes_[h.tail].next_same = child;
      }
      h.tail = child;
    }
    nodes_[child].count += weight;
    header_[rank_[item]].total += weight;
    at = child;
  }
}

std::vector<ItemId> FPTree::item_order() const {
  std::vector<ItemId> order;
  order.reserve(header_.size());
  for (const auto& h : header_) {
    order.push_back(h.item);
  }
  return order;
}

FPTree::NodeRef FPTree::rank(ItemId item) const { return item < rank_.size() ? rank_[item] : kNone; }

bool FPTree::single_path() const {
  for (const Node& n : nodes_) {
    if (n.first_child != kNone && nodes_[n.first_child].next_sibling != kNone) {
      return false;
    }
  }
  return true;
}

std::vector<ItemId> FPTree::prefix_path(NodeRef node) const {
  std::vector<ItemId> path;
  for (NodeRef at = nodes_[node].parent; at != kRoot && at != kNone; at = nodes_[at].parent) {
    path.push_back(nodes_[at].item);
  }
  return path;
}

FPTree build_fptree(const TransactionDb& db, double min_support, Execution execution) {
  validate_min_support(min_support);
  if (db.empty()) {
    throw DataError("empty transaction database");
  }
  const Count cutoff = min_count(min_support, db.n_transactions());
  const auto counts = count_items(db, execution);

  std::vector<ItemId> order;
  for (ItemId i = 0; i < counts.size(); ++i) {
    if (counts[i] >= cutoff) {
      order.push_back(i);
    }
  }
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    return counts[a] != counts[b] ? counts[a] > counts[b] : a < b;
  });

  FPTree tree(order, db.n_items());
  std::vector<ItemId> path;
  for (const Itemset& t : db.transactions()) {
    path.clear();
    for (ItemId i : t) {
      if (tree.rank(i) != FPTree::kNone) {
        path.push_back(i);
      }
    }
    std::sort(path.begin(), path.end(), [&](ItemId a, ItemId b) { return tree.rank(a) < tree.rank(b); });
    if (!path.empty()) {
      tree.insert(path, 1);
    }
  }
  return tree;
}

namespace {

struct MiningContext {
  Count cutoff;
  std::size_t n_transactions;
  std::optional<std::size_t> max_len;

  [[nodiscard]] bool room_for(std::size_t len) const { return !max_len || len <= *max_len; }

  void emit(const std::vector<ItemId>& suffix, Count count, std::vector<FrequentItemset>& out) const {
    Itemset items = suffix;
    std::sort(items.begin(), items.end());
    out.push_back({std::move(items), count, static_cast<double>(count) / static_cast<double>(n_transactions)});
  }
};

void mine_tree(const FPTree& tree, std::vector<ItemId>& suffix, const MiningContext& ctx,
               std::vector<FrequentItemset>& out);

// Enumerates every nonempty combination of a single-path tree's nodes.
// The count of a combination is that of its deepest node.
void mine_single_path(const FPTree& tree, std::vector<ItemId>& suffix, const MiningContext& ctx,
                      std::vector<FrequentItemset>& out) {
  std::vector<FPTree::NodeRef> path;
  for (auto at = tree.nodes()[FPTree::kRoot].first_child; at != FPTree::kNone; at = tree.nodes()[at].first_child) {
    if (tree.nodes()[at].count >= ctx.cutoff) {
      path.push_back(at);
    }
  }
  // Choose the deepest node, then any subset of the nodes above it.
  for (std::size_t deepest = 0; deepest < path.size(); ++deepest) {
    const auto& node = tree.nodes()[path[deepest]];
    const std::size_t above = deepest;
    const std::size_t base = suffix.size();
    suffix.push_back(node.item);
    if (!ctx.room_for(suffix.size())) {
      suffix.resize(base);
      continue;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << above); ++mask) {
      const auto picked = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (!ctx.room_for(suffix.size() + picked)) {
        continue;
      }
      const std::size_t mark = suffix.size();
      for (std::size_t b = 0; b < above; ++b) {
        if (mask >> b & 1U) {
          suffix.push_back(tree.nodes()[path[b]].item);
        }
      }
      ctx.emit(suffix, node.count, out);
      suffix.resize(mark);
    }
    suffix.resize(base);
  }
}

FPTree conditional_tree(const FPTree& tree, const FPTree::HeaderEntry& entry, Count cutoff) {
  std::vector<Count> weight(tree.universe(), 0);
  std::vector<std::pair<std::vector<ItemId>, Count>> base;
  for (auto at = entry.head; at != FPTree::kNone; at = tree.nodes()[at].next_same) {
    auto path = tree.prefix_path(at);
    if (path.empty()) {
      continue;
    }
    const Count w = tree.nodes()[at].count;
    for (ItemId i : path) {
      weight[i] += w;
    }
    std::reverse(path.begin(), path.end());  // root-first, i.e. item order
    base.emplace_back(std::move(path), w);
  }

  // Keep the parent tree's order: prefix paths already respect it.
  std::vector<ItemId> order;
  for (const auto& h : tree.header()) {
    if (weight[h.item] >= cutoff) {
      order.push_back(h.item);
    }
  }
  FPTree cond(order, tree.universe());
  std::vector<ItemId> filtered;
  for (const auto& [path, w] : base) {
    filtered.clear();
    for (ItemId i : path) {
      if (weight[i] >= cutoff) {
        filtered.push_back(i);
      }
    }
    if (!filtered.empty()) {
      cond.insert(filtered, w);
    }
  }
  return cond;
}

void mine_header_entry(const FPTree& tree, const FPTree::HeaderEntry& entry, std::vector<ItemId>& suffix,
                       const MiningContext& ctx, std::vector<FrequentItemset>& out) {
  if (entry.total < ctx.cutoff) {
    return;
  }
  suffix.push_back(entry.item);
  if (ctx.room_for(suffix.size())) {
    ctx.emit(suffix, entry.total, out);
    if (ctx.room_for(suffix.size() + 1)) {
      const FPTree cond = conditional_tree(tree, entry, ctx.cutoff);
      if (!cond.empty()) {
        mine_tree(cond, suffix, ctx, out);
      }
    }
  }
  suffix.pop_back();
}

void mine_tree(const FPTree& tree, std::vector<ItemId>& suffix, const MiningContext& ctx,
               std::vector<FrequentItemset>& out) {
  if (tree.single_path() && tree.header().size() < 63) {
    mine_single_path(tree, suffix, ctx, out);
    return;
  }
  for (auto it = tree.header().rbegin(); it != tree.header().rend(); ++it) {
    mine_header_entry(tree, *it, suffix, ctx, out);
  }
}

}  // namespace

std::vector<FrequentItemset> mine_fptree(const FPTree& tree, double min_support, std::size_t n_transactions,
                                         std::optional<std::size_t> max_itemset_len, Execution execution) {
  validate_min_support(min_support);
  if (max_itemset_len && *max_itemset_len == 0) {
    throw ConfigError("max itemset length must be >= 1");
  }
  std::vector<FrequentItemset> result;
  if (tree.empty() || n_transactions == 0) {
    return result;
  }
  const MiningContext ctx{min_count(min_support, n_transactions), n_transactions, max_itemset_len};

  if (execution == Execution::serial || tree.single_path()) {
    std::vector<ItemId> suffix;
    mine_tree(tree, suffix, ctx, result);
  } else {
    // Conditional subproblems of distinct header items are independent.
    const auto& header = tree.header();
    std::vector<std::vector<FrequentItemset>> parts(header.size());
    const auto n_entries = static_cast<std::int64_t>(header.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t h = 0; h < n_entries; ++h) {
      std::vector<ItemId> suffix;
      mine_header_entry(tree, header[static_cast<std::size_t>(h)], suffix, ctx,
                        parts[static_cast<std::size_t>(h)]);
    }
    for (auto& part : parts) {
      result.insert(result.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  normalize(result);
  return result;
}

std::vector<FrequentItemset> mine_fpgrowth(const TransactionDb& db, const MinerConfig& cfg) {
  validate(cfg);
  const FPTree tree = build_fptree(db, cfg.min_support, cfg.execution);
  return mine_fptree(tree, cfg.min_support, db.n_transactions(), cfg.max_itemset_len, cfg.execution);
}

}  // namespace rulemine

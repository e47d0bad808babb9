#include "rulemine/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rulemine {

ItemId ItemDictionary::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<ItemId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

const std::string& ItemDictionary::label(ItemId id) const {
  if (id >= labels_.size()) {
    throw DataError("unknown item id " + std::to_string(id));
  }
  return labels_[id];
}

const ItemId* ItemDictionary::find(std::string_view label) const {
  auto it = index_.find(label);
  return it == index_.end() ? nullptr : &it->second;
}

std::string_view ItemDictionary::attribute(ItemId id) const {
  std::string_view l = label(id);
  return l.substr(0, l.find(kLabelSeparator));
}

std::string_view ItemDictionary::value(ItemId id) const {
  std::string_view l = label(id);
  const auto pos = l.find(kLabelSeparator);
  return pos == std::string_view::npos ? std::string_view{} : l.substr(pos + 1);
}

TransactionDb::TransactionDb(std::vector<Itemset> transactions, std::size_t n_items)
    : transactions_(std::move(transactions)), n_items_(n_items) {
  for (std::size_t t = 0; t < transactions_.size(); ++t) {
    const Itemset& items = transactions_[t];
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i] >= n_items_) {
        throw DataError("transaction " + std::to_string(t) + " holds item id " +
                        std::to_string(items[i]) + " outside universe of " +
                        std::to_string(n_items_));
      }
      if (i > 0 && items[i - 1] >= items[i]) {
        throw DataError("transaction " + std::to_string(t) + " is not sorted and duplicate-free");
      }
    }
  }
}

TransactionDb TransactionDb::from_unsorted(std::vector<Itemset> transactions, std::size_t n_items) {
  for (auto& t : transactions) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  return TransactionDb(std::move(transactions), n_items);
}

EncodedData encode_rows(std::span<const Record> rows, std::span<const std::string> attribute_order) {
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < attribute_order.size(); ++i) {
    position.emplace(attribute_order[i], i);
  }

  EncodedData out;
  std::vector<Itemset> transactions;
  transactions.reserve(rows.size());
  std::vector<const Field*> slots(attribute_order.size());

  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::fill(slots.begin(), slots.end(), nullptr);
    for (const Field& f : rows[r]) {
      auto it = position.find(f.attribute);
      if (it == position.end()) {
        throw DataError("row " + std::to_string(r) + ": attribute '" + f.attribute +
                        "' is not in the attribute order");
      }
      if (slots[it->second] != nullptr) {
        throw DataError("row " + std::to_string(r) + ": duplicate attribute '" + f.attribute + "'");
      }
      if (f.value.empty()) {
        throw DataError("row " + std::to_string(r) + ": empty value for '" + f.attribute + "'");
      }
      slots[it->second] = &f;
    }
    Itemset items;
    for (const Field* f : slots) {
      if (f != nullptr) {
        items.push_back(out.dictionary.intern(f->attribute + kLabelSeparator + f->value));
      }
    }
    std::sort(items.begin(), items.end());
    transactions.push_back(std::move(items));
  }
  out.db = TransactionDb(std::move(transactions), out.dictionary.size());
  return out;
}

std::vector<std::string> decode_itemset(const ItemDictionary& dict, const Itemset& items) {
  Itemset sorted = items;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (ItemId id : sorted) {
    labels.push_back(dict.label(id));
  }
  return labels;
}

bool attribute_exclusive(const TransactionDb& db, const ItemDictionary& dict) {
  std::unordered_set<std::string_view> seen;
  for (const Itemset& t : db.transactions()) {
    seen.clear();
    for (ItemId id : t) {
      if (!seen.insert(dict.attribute(id)).second) {
        return false;
      }
    }
  }
  return true;
}

Count min_count(double fraction, std::size_t n) {
  const double exact = fraction * static_cast<double>(n);
  const double nearest = std::round(exact);
  double c = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  if (c < 1.0) {
    c = 1.0;
  }
  return static_cast<Count>(c);
}

void validate_min_support(double min_support) {
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    throw ConfigError("min-support must be in (0,1]");
  }
}

bool itemset_order(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a < b;
}

void normalize(std::vector<FrequentItemset>& itemsets) {
  std::sort(itemsets.begin(), itemsets.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) { return itemset_order(a.items, b.items); });
}

bool is_subset(std::span<const ItemId> sub, std::span<const ItemId> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::size_t ItemsetHash::operator()(const Itemset& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (ItemId id : s) {
    h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace rulemine

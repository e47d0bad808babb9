#pragma once

// Transaction data model: item dictionary, encoded transaction database,
// frequent itemsets and the shared ordering / threshold helpers.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rulemine {

using ItemId = std::uint32_t;
using Count = std::uint64_t;

/// Sorted ascending, duplicate-free list of item ids.
using Itemset = std::vector<ItemId>;

/// Bad input data (malformed files, inconsistent records, unsupported rules).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameters.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr char kLabelSeparator = '_';

/// Bijective map between dense item ids and "<attribute>_<value>" labels.
class ItemDictionary {
public:
  ItemDictionary() = default;

  /// Returns the id of `label`, inserting it with the next free id if new.
  ItemId intern(std::string_view label);

  [[nodiscard]] const std::string& label(ItemId id) const;
  [[nodiscard]] const ItemId* find(std::string_view label) const;
  /// Everything before the first underscore.
  [[nodiscard]] std::string_view attribute(ItemId id) const;
  /// Everything after the first underscore.
  [[nodiscard]] std::string_view value(ItemId id) const;

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const ItemDictionary& a, const ItemDictionary& b) {
    return a.labels_ == b.labels_;
  }

private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> labels_;
  std::unordered_map<std::string, ItemId, StringHash, std::equal_to<>> index_;
};

/// Encoded dataset. Immutable after construction.
class TransactionDb {
public:
  TransactionDb() = default;
  /// Validates that every transaction is sorted, duplicate-free and within
  /// [0, n_items). Throws DataError otherwise.
  TransactionDb(std::vector<Itemset> transactions, std::size_t n_items);

  /// Sorts and deduplicates each transaction before validating ids.
  static TransactionDb from_unsorted(std::vector<Itemset> transactions, std::size_t n_items);

  [[nodiscard]] std::size_t n_transactions() const noexcept { return transactions_.size(); }
  [[nodiscard]] std::size_t n_items() const noexcept { return n_items_; }
  [[nodiscard]] const std::vector<Itemset>& transactions() const noexcept { return transactions_; }
  [[nodiscard]] const Itemset& operator[](std::size_t i) const { return transactions_[i]; }
  [[nodiscard]] bool empty() const noexcept { return transactions_.empty(); }

  friend bool operator==(const TransactionDb&, const TransactionDb&) = default;

private:
  std::vector<Itemset> transactions_;
  std::size_t n_items_ = 0;
};

struct FrequentItemset {
  Itemset items;
  Count count = 0;
  double support = 0.0;  // count / n_transactions

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// One categorical field of a cleaned survey record.
struct Field {
  std::string attribute;
  std::string value;

  friend bool operator==(const Field&, const Field&) = default;
};

/// A cleaned record: attribute/value pairs in source column order.
using Record = std::vector<Field>;

struct EncodedData {
  ItemDictionary dictionary;
  TransactionDb db;
};

/// Encodes records into transactions. Ids are assigned in first-encounter
/// order scanning rows in order and, within a row, attributes in
/// `attribute_order`. Throws DataError on a duplicate attribute within one
/// record or an attribute not listed in `attribute_order`.
EncodedData encode_rows(std::span<const Record> rows, std::span<const std::string> attribute_order);

/// Labels of `items`, in ascending id order. Throws DataError on an unknown id.
std::vector<std::string> decode_itemset(const ItemDictionary& dict, const Itemset& items);

/// True when no transaction holds two items of the same attribute.
bool attribute_exclusive(const TransactionDb& db, const ItemDictionary& dict);

/// Smallest count c with c / n >= fraction. Products within a relative
/// 1e-9 of an integer snap to it so decimal thresholds like 0.6 * 5 are
/// not pushed up by binary rounding.
Count min_count(double fraction, std::size_t n);

/// have >= min_count(fraction, n), without the rounding calls.
inline bool meets_fraction(Count have, double fraction, std::size_t n) {
  const double exact = fraction * static_cast<double>(n);
  return have >= 1 && static_cast<double>(have) >= exact - 1e-9 * (exact > 1.0 ? exact : 1.0);
}

/// Throws ConfigError unless 0 < min_support <= 1.
void validate_min_support(double min_support);

/// Length ascending, then lexicographic ids.
bool itemset_order(const Itemset& a, const Itemset& b);

/// Sorts into the normalized miner output order.
void normalize(std::vector<FrequentItemset>& itemsets);

/// Whether sorted `sub` is a subset of sorted `super`.
bool is_subset(std::span<const ItemId> sub, std::span<const ItemId> super);

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept;
};

}  // namespace rulemine

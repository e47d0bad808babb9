#include "rulemine/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>

#include "rulemine/apriori.hpp"
#include "rulemine/fpgrowth.hpp"

namespace rulemine {

void validate(const OracleLimits& limits) {
  if (limits.max_items > 24) {
    throw ConfigError("oracle max_items must be <= 24");
  }
}

bool within(const TransactionDb& db, const OracleLimits& limits) {
  return db.n_items() <= limits.max_items && db.n_transactions() <= limits.max_transactions;
}

namespace {

Itemset mask_items(std::uint32_t mask) {
  Itemset s;
  for (ItemId i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) {
      s.push_back(i);
    }
  }
  return s;
}

std::string describe(const Itemset& items, const ItemDictionary* dict) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += dict != nullptr && items[i] < dict->size() ? dict->label(items[i]) : std::to_string(items[i]);
  }
  return out + "}";
}

}  // namespace

std::vector<Count> subset_counts(const TransactionDb& db, const OracleLimits& limits) {
  validate(limits);
  if (!within(db, limits)) {
    throw ConfigError("oracle limits exceeded");
  }
  std::vector<std::uint32_t> masks;
  masks.reserve(db.n_transactions());
  for (const Itemset& t : db.transactions()) {
    std::uint32_t m = 0;
    for (ItemId i : t) {
      m |= std::uint32_t{1} << i;
    }
    masks.push_back(m);
  }
  const std::int64_t n_subsets = std::int64_t{1} << db.n_items();
  std::vector<Count> counts(static_cast<std::size_t>(n_subsets), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < n_subsets; ++s) {
    const auto subset = static_cast<std::uint32_t>(s);
    Count c = 0;
    for (std::uint32_t m : masks) {
      c += (m & subset) == subset;
    }
    counts[static_cast<std::size_t>(s)] = c;
  }
  return counts;
}

namespace {

std::vector<FrequentItemset> frequent_from_counts(const std::vector<Count>& counts, std::size_t n_transactions,
                                                  double min_support) {
  std::vector<FrequentItemset> out;
  if (n_transactions == 0) {
    return out;
  }
  const Count cutoff = min_count(min_support, n_transactions);
  const auto n = static_cast<double>(n_transactions);
  for (std::size_t s = 1; s < counts.size(); ++s) {
    if (counts[s] >= cutoff) {
      out.push_back({mask_items(static_cast<std::uint32_t>(s)), counts[s], static_cast<double>(counts[s]) / n});
    }
  }
  normalize(out);
  return out;
}

std::vector<AssociationRule> rules_from_counts(const std::vector<Count>& counts, std::size_t n_transactions,
                                               const Thresholds& t) {
  std::vector<AssociationRule> out;
  if (n_transactions == 0) {
    return out;
  }
  // Every disjoint pair (X, Y) is visited once as a split of its union.
  for (std::uint32_t z = 1; z < counts.size(); ++z) {
    if (__builtin_popcount(z) < 2) {
      continue;
    }
    for (std::uint32_t x = (z - 1) & z; x != 0; x = (x - 1) & z) {
      const std::uint32_t y = z ^ x;
      if (passes(t, counts[z], counts[x], counts[y], n_transactions)) {
        out.push_back(make_rule(mask_items(x), mask_items(y), counts[z], counts[x], counts[y], n_transactions));
      }
    }
  }
  sort_rules(out);
  return out;
}

}  // namespace

std::vector<FrequentItemset> brute_force_frequent(const TransactionDb& db, double min_support,
                                                  const OracleLimits& limits) {
  validate_min_support(min_support);
  return frequent_from_counts(subset_counts(db, limits), db.n_transactions(), min_support);
}

std::vector<AssociationRule> brute_force_rules(const TransactionDb& db, const Thresholds& t,
                                               const OracleLimits& limits) {
  validate(t);
  return rules_from_counts(subset_counts(db, limits), db.n_transactions(), t);
}

MinerSet default_miners() {
  return {[](const TransactionDb& db, double s) { return mine_apriori(db, MinerConfig{s, std::nullopt}); },
          [](const TransactionDb& db, double s) { return mine_fpgrowth(db, MinerConfig{s, std::nullopt}); }};
}

std::string diff_itemsets(const std::vector<FrequentItemset>& lhs, std::string_view lhs_name,
                          const std::vector<FrequentItemset>& rhs, std::string_view rhs_name,
                          const ItemDictionary* dict) {
  std::map<Itemset, Count> l;
  std::map<Itemset, Count> r;
  for (const auto& f : lhs) {
    l.emplace(f.items, f.count);
  }
  for (const auto& f : rhs) {
    r.emplace(f.items, f.count);
  }
  std::ostringstream msg;
  for (const auto& [items, count] : l) {
    auto it = r.find(items);
    if (it == r.end()) {
      msg << "itemset " << describe(items, dict) << " (count " << count << ") present in " << lhs_name
          << " but missing from " << rhs_name;
      return msg.str();
    }
    if (it->second != count) {
      msg << "itemset " << describe(items, dict) << " count mismatch: " << lhs_name << "=" << count << " "
          << rhs_name << "=" << it->second;
      return msg.str();
    }
  }
  for (const auto& [items, count] : r) {
    if (!l.contains(items)) {
      msg << "itemset " << describe(items, dict) << " (count " << count << ") present in " << rhs_name
          << " but missing from " << lhs_name;
      return msg.str();
    }
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(lhs[i] == rhs[i])) {
      msg << "output order differs at position " << i << " between " << lhs_name << " and " << rhs_name;
      return msg.str();
    }
  }
  return {};
}

std::string diff_rules(const std::vector<AssociationRule>& lhs, std::string_view lhs_name,
                       const std::vector<AssociationRule>& rhs, std::string_view rhs_name,
                       const ItemDictionary* dict) {
  using Key = std::pair<Itemset, Itemset>;
  std::map<Key, const AssociationRule*> l;
  std::map<Key, const AssociationRule*> r;
  for (const auto& x : lhs) {
    l.emplace(Key{x.antecedent, x.consequent}, &x);
  }
  for (const auto& x : rhs) {
    r.emplace(Key{x.antecedent, x.consequent}, &x);
  }
  std::ostringstream msg;
  const auto name = [&](const Key& k) { return describe(k.first, dict) + " -> " + describe(k.second, dict); };
  for (const auto& [key, rule] : l) {
    auto it = r.find(key);
    if (it == r.end()) {
      msg << "rule " << name(key) << " present in " << lhs_name << " but missing from " << rhs_name;
      return msg.str();
    }
    if (!(*it->second == *rule)) {
      msg << "rule " << name(key) << " metrics differ between " << lhs_name << " and " << rhs_name;
      return msg.str();
    }
  }
  for (const auto& [key, rule] : r) {
    if (!l.contains(key)) {
      msg << "rule " << name(key) << " present in " << rhs_name << " but missing from " << lhs_name;
      return msg.str();
    }
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(lhs[i] == rhs[i])) {
      msg << "rule order differs at position " << i << " between " << lhs_name << " and " << rhs_name;
      return msg.str();
    }
  }
  return {};
}

std::string EquivalenceReport::to_text() const {
  std::ostringstream out;
  out << "status: " << (equivalent ? "equivalent" : "divergent") << '\n'
      << "oracle_checked: " << (oracle_checked ? "yes" : "no") << '\n'
      << "itemsets: " << itemsets << '\n'
      << "rules: " << rules << '\n';
  if (!equivalent) {
    out << "divergence: " << divergence << '\n';
  }
  return out.str();
}

EquivalenceReport check_equivalence(const TransactionDb& db, double min_support, const Thresholds& t,
                                    const OracleLimits& limits, const MinerSet& miners, const ItemDictionary* dict) {
  validate(limits);
  validate(t);
  EquivalenceReport report;
  const auto fail = [&](std::string why) {
    report.equivalent = false;
    report.divergence = std::move(why);
    return report;
  };

  const auto apriori = miners.apriori(db, min_support);
  const auto fpgrowth = miners.fpgrowth(db, min_support);
  report.itemsets = apriori.size();
  if (auto d = diff_itemsets(apriori, "apriori", fpgrowth, "fpgrowth", dict); !d.empty()) {
    return fail(std::move(d));
  }

  Thresholds rule_t = t;
  rule_t.min_support = std::max(min_support, t.min_support);
  const auto apriori_rules = generate_rules(apriori, db.n_transactions(), rule_t);
  const auto fpgrowth_rules = generate_rules(fpgrowth, db.n_transactions(), rule_t);
  report.rules = apriori_rules.size();
  if (auto d = diff_rules(apriori_rules, "apriori", fpgrowth_rules, "fpgrowth", dict); !d.empty()) {
    return fail(std::move(d));
  }

  if (within(db, limits)) {
    report.oracle_checked = true;
    const auto counts = subset_counts(db, limits);
    const auto oracle = frequent_from_counts(counts, db.n_transactions(), min_support);
    if (auto d = diff_itemsets(apriori, "apriori", oracle, "oracle", dict); !d.empty()) {
      return fail(std::move(d));
    }
    const auto oracle_rules = rules_from_counts(counts, db.n_transactions(), rule_t);
    if (auto d = diff_rules(apriori_rules, "apriori", oracle_rules, "oracle", dict); !d.empty()) {
      return fail(std::move(d));
    }
  }
  return report;
}

RandomDbSpec suite_db_spec(std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(seed * 1000003ULL + index);
  RandomDbSpec spec;
  spec.n_transactions = std::uniform_int_distribution<std::size_t>(1, 500)(rng);
  spec.n_items = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
  spec.density = static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng)) / 10.0;
  spec.seed = rng();
  return spec;
}

}  // namespace rulemine
